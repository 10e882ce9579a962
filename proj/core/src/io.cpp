#include "flockhd/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace flockhd {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_curve_csv(std::ostream& os, const ThresholdCurve& curve) {
  const bool with_gap = curve.gap.has_value();
  os << "x,value,kind,gamma,Gamma,C,G";
  if (with_gap) os << ",delta,B";
  os << "\n";
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    os << fmt_double(curve.xs[i]) << ',' << fmt_double(curve.values[i]) << ','
       << curve_kind_name(curve.kind) << ',' << fmt_double(curve.params.gamma) << ','
       << fmt_double(curve.params.Gamma) << ',' << fmt_double(curve.params.C) << ','
       << fmt_double(curve.params.G);
    if (with_gap) os << ',' << fmt_double(curve.gap->delta) << ',' << fmt_double(curve.gap->B);
    os << "\n";
  }
}

void write_trajectory_header_1d(std::ostream& os) { os << "t,i,x,u,e,rho,w\n"; }

void write_trajectory_rows_1d(std::ostream& os, const Ensemble1D& ens) {
  for (std::size_t i = 0; i < ens.size(); ++i) {
    os << fmt_double(ens.t) << ',' << i << ',' << fmt_double(ens.x[i]) << ','
       << fmt_double(ens.u[i]) << ',' << fmt_double(ens.e[i]) << ',' << fmt_double(ens.rho[i])
       << ',' << fmt_double(ens.w[i]) << "\n";
  }
}

void write_trajectory_header_2d(std::ostream& os) {
  os << "t,i,x1,x2,u1,u2,M11,M12,M21,M22,rho,w\n";
}

void write_trajectory_rows_2d(std::ostream& os, const Ensemble2D& ens) {
  for (std::size_t i = 0; i < ens.size(); ++i) {
    os << fmt_double(ens.t) << ',' << i << ',' << fmt_double(ens.x1[i]) << ','
       << fmt_double(ens.x2[i]) << ',' << fmt_double(ens.u1[i]) << ',' << fmt_double(ens.u2[i])
       << ',' << fmt_double(ens.m11[i]) << ',' << fmt_double(ens.m12[i]) << ','
       << fmt_double(ens.m21[i]) << ',' << fmt_double(ens.m22[i]) << ','
       << fmt_double(ens.rho[i]) << ',' << fmt_double(ens.w[i]) << "\n";
  }
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records,
                           std::span<const double> lambdas) {
  os << "t,S,V,mass,momentum1,momentum2,grad_min,energy";
  for (double l : lambdas) os << ",V_lambda_" << fmt_double(l) << ",S_lambda_" << fmt_double(l);
  os << "\n";
  for (const DiagnosticsRecord& r : records) {
    os << fmt_double(r.t) << ',' << fmt_double(r.S) << ',' << fmt_double(r.V) << ','
       << fmt_double(r.mass) << ',' << fmt_double(r.momentum1) << ',' << fmt_double(r.momentum2)
       << ',' << fmt_double(r.grad_min) << ',' << fmt_double(r.energy);
    for (double l : lambdas) {
      double v = 0.0, s = 0.0;
      for (const auto& [lam, val] : r.v_lambda)
        if (std::abs(lam - l) <= 1e-12 * (1.0 + l)) v = val;
      for (const auto& [lam, val] : r.s_lambda)
        if (std::abs(lam - l) <= 1e-12 * (1.0 + l)) s = val;
      os << ',' << fmt_double(v) << ',' << fmt_double(s);
    }
    os << "\n";
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<PhasePoint>& points) {
  os << "V0,d0,B0,outcome,T_c,predicted_closed,predicted_fast\n";
  for (const PhasePoint& p : points) {
    os << fmt_double(p.V0) << ',' << fmt_double(p.d0) << ',' << fmt_double(p.B0) << ','
       << outcome_name(p.outcome) << ','
       << (p.outcome == Outcome::BlowUp ? fmt_double(p.t_out) : std::string())
       << ',' << threshold_class_name(p.predicted_closed) << ','
       << threshold_class_name(p.predicted_fast) << "\n";
  }
}

std::string sweep_summary_json(const SweepSummary& s) {
  json j;
  j["points"] = s.points;
  j["regular"] = s.regular;
  j["blowup"] = s.blowup;
  j["undecided"] = s.undecided;
  j["undecided_infeasible"] = s.undecided_infeasible;
  j["undecided_horizon"] = s.undecided_horizon;
  j["subcritical_predicted_blowups"] = s.subcritical_predicted_blowups;
  j["supercritical_predicted_survivors"] = s.supercritical_predicted_survivors;
  j["closed_subset_of_fast"] = s.closed_subset_of_fast;
  j["fast_only_subcritical"] = s.fast_only_subcritical;
  return j.dump(2) + "\n";
}

std::string flocking_report_json(const FlockingReport& rep) {
  json j;
  j["pass"] = rep.pass();
  j["D"] = rep.D;
  j["V0"] = rep.V0;
  j["guaranteed_rate"] = rep.guaranteed_rate;
  j["fitted_rate"] = rep.fitted_rate;
  j["worst_diameter_ratio"] = rep.worst_diameter_ratio;
  j["worst_decay_ratio"] = rep.worst_decay_ratio;
  j["violations"] = rep.violations;
  return j.dump(2) + "\n";
}

std::string validate_report_json(const ValidateReport& rep) {
  json j;
  j["all_pass"] = rep.all_pass();
  json items = json::array();
  for (const ValidateItem& it : rep.items)
    items.push_back({{"name", it.name}, {"pass", it.pass}, {"detail", it.detail}});
  j["items"] = items;
  j["notes"] = rep.notes;
  return j.dump(2) + "\n";
}

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& what) {
  throw ConfigError(origin + ": " + path + ": " + what);
}

double num_at(const json& j, const std::string& origin, const std::string& path,
              const char* key, std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    fail(origin, path + "." + key, "missing required number");
  }
  if (!j[key].is_number()) fail(origin, path + "." + key, "expected a number");
  return j[key].get<double>();
}

Interval interval_at(const json& j, const std::string& origin, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(origin, path, "expected [lo, hi]");
  Interval iv{j[0].get<double>(), j[1].get<double>()};
  if (!(iv.hi > iv.lo)) fail(origin, path, "needs hi > lo");
  return iv;
}

std::vector<double> grid_at(const json& j, const std::string& origin, const std::string& path) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) fail(origin, path, "grid entries must be numbers");
      out.push_back(v.get<double>());
    }
  } else if (j.is_object()) {
    const double lo = num_at(j, origin, path, "min");
    const double hi = num_at(j, origin, path, "max");
    const auto n = static_cast<std::size_t>(num_at(j, origin, path, "count"));
    if (n < 1) fail(origin, path + ".count", "must be >= 1");
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(n == 1 ? lo
                           : lo + (hi - lo) * static_cast<double>(i) /
                                      static_cast<double>(n - 1));
  } else {
    fail(origin, path, "expected an array or {min,max,count}");
  }
  return out;
}

InfluenceKernel kernel_at(const json& j, const std::string& origin, const std::string& path) {
  if (!j.is_object()) fail(origin, path, "expected a kernel object");
  const std::string family = j.value("family", "power_law");
  if (family == "power_law") return InfluenceKernel::power_law(num_at(j, origin, path, "alpha"));
  if (family == "tabulated") {
    if (!j.contains("r") || !j.contains("phi")) fail(origin, path, "tabulated needs r and phi");
    return InfluenceKernel::tabulated(j["r"].get<std::vector<double>>(),
                                      j["phi"].get<std::vector<double>>());
  }
  fail(origin, path + ".family", "unknown kernel family '" + family + "'");
}

ModelParams model_at(const json& j, const std::string& origin) {
  if (!j.is_object()) fail(origin, "model", "expected an object");
  const std::string type = j.value("type", "cs");
  ModelParams::Model m;
  if (type == "cs")
    m = ModelParams::Model::CS;
  else if (type == "mt")
    m = ModelParams::Model::MT;
  else
    fail(origin, "model.type", "unknown model '" + type + "'");
  InfluenceKernel kernel = j.contains("kernel")
                               ? kernel_at(j["kernel"], origin, "model.kernel")
                               : InfluenceKernel::power_law(0.5);
  return make_model(m, j.value("mass", 1.0), std::move(kernel));
}

StepConfig solver_at(const json& j, const std::string& origin, const std::string& path) {
  StepConfig cfg;
  if (j.is_null()) return cfg;
  if (!j.is_object()) fail(origin, path, "expected an object");
  cfg.dt_base = num_at(j, origin, path, "dt", cfg.dt_base);
  cfg.blowup_cutoff = num_at(j, origin, path, "blowup_cutoff", cfg.blowup_cutoff);
  if (j.contains("adaptive")) {
    if (!j["adaptive"].is_boolean()) fail(origin, path + ".adaptive", "expected a boolean");
    cfg.adaptive = j["adaptive"].get<bool>();
  }
  return cfg;
}

Support2D support2d_at(const json& j, const std::string& origin, const std::string& path) {
  Support2D s;
  if (!j.is_object()) fail(origin, path, "expected an object");
  const std::string shape = j.value("shape", "rectangle");
  if (shape == "rectangle")
    s.shape = Support2D::Shape::Rectangle;
  else if (shape == "disk")
    s.shape = Support2D::Shape::Disk;
  else
    fail(origin, path + ".shape", "unknown shape '" + shape + "'");
  if (j.contains("x1")) s.x1 = interval_at(j["x1"], origin, path + ".x1");
  if (j.contains("x2")) s.x2 = interval_at(j["x2"], origin, path + ".x2");
  return s;
}

SimulateSpec simulate_at(const json& j, const std::string& origin) {
  SimulateSpec spec;
  spec.dimension = static_cast<int>(num_at(j, origin, "simulate", "dimension", 1.0));
  if (spec.dimension != 1 && spec.dimension != 2)
    fail(origin, "simulate.dimension", "must be 1 or 2");
  if (!j.contains("initial") || !j["initial"].is_object())
    fail(origin, "simulate.initial", "missing initial data object");
  const json& ini = j["initial"];
  spec.profile = ini.value("profile", "nshape");
  spec.N = static_cast<std::size_t>(num_at(ini, origin, "simulate.initial", "N", 200.0));
  if (spec.profile == "nshape" || spec.profile == "sine") {
    spec.V0 = num_at(ini, origin, "simulate.initial", "V0");
    spec.d0 = num_at(ini, origin, "simulate.initial", "d0");
    if (ini.contains("support"))
      spec.support = interval_at(ini["support"], origin, "simulate.initial.support");
  } else if (spec.profile == "two_blob") {
    if (!ini.contains("blobs") || !ini["blobs"].is_array() || ini["blobs"].size() != 2)
      fail(origin, "simulate.initial.blobs", "expected [[lo,hi],[lo,hi]]");
    spec.two_blob.left = interval_at(ini["blobs"][0], origin, "simulate.initial.blobs[0]");
    spec.two_blob.right = interval_at(ini["blobs"][1], origin, "simulate.initial.blobs[1]");
    spec.two_blob.slope = num_at(ini, origin, "simulate.initial", "slope");
  } else if (spec.profile == "linear_shear") {
    spec.V0 = num_at(ini, origin, "simulate.initial", "V0");
    spec.d0 = num_at(ini, origin, "simulate.initial", "d0");
    spec.B0 = num_at(ini, origin, "simulate.initial", "B0", 0.0);
    if (ini.contains("support"))
      spec.support2d = support2d_at(ini["support"], origin, "simulate.initial.support");
  } else {
    fail(origin, "simulate.initial.profile", "unknown profile '" + spec.profile + "'");
  }
  if (j.contains("tracers")) {
    if (!j["tracers"].is_array()) fail(origin, "simulate.tracers", "expected an array");
    for (const auto& v : j["tracers"]) spec.tracers.push_back(v.get<double>());
  }
  spec.t_end = num_at(j, origin, "simulate", "t_end", 10.0);
  spec.solver = solver_at(j.value("solver", json()), origin, "simulate.solver");
  spec.output_every = static_cast<int>(num_at(j, origin, "simulate", "output_every", 10.0));
  return spec;
}

ThresholdsSpec thresholds_at(const json& j, const std::string& origin) {
  ThresholdsSpec spec;
  if (j.contains("curves")) {
    spec.curves.clear();
    for (const auto& c : j["curves"]) spec.curves.push_back(c.get<std::string>());
  }
  spec.x_max = num_at(j, origin, "thresholds", "x_max", 2.0);
  if (j.contains("params")) {
    const json& p = j["params"];
    spec.params = MajorantParams{num_at(p, origin, "thresholds.params", "gamma"),
                                 num_at(p, origin, "thresholds.params", "Gamma"),
                                 num_at(p, origin, "thresholds.params", "C"),
                                 num_at(p, origin, "thresholds.params", "G")};
  }
  if (j.contains("D")) spec.D = num_at(j, origin, "thresholds", "D");
  if (j.contains("S0")) spec.S0 = num_at(j, origin, "thresholds", "S0");
  if (j.contains("V0")) spec.V0 = num_at(j, origin, "thresholds", "V0");
  spec.gap.delta = num_at(j, origin, "thresholds", "delta", spec.gap.delta);
  spec.gap.B = num_at(j, origin, "thresholds", "B", spec.gap.B);
  spec.E = num_at(j, origin, "thresholds", "E", spec.E);
  spec.F = num_at(j, origin, "thresholds", "F", spec.F);
  return spec;
}

SweepConfig sweep_at(const json& j, const std::string& origin, const ModelParams& model) {
  SweepConfig cfg;
  cfg.model = model;
  cfg.dimension = static_cast<int>(num_at(j, origin, "sweep", "dimension", 1.0));
  if (!j.contains("V0_grid")) fail(origin, "sweep.V0_grid", "missing grid");
  if (!j.contains("d0_grid")) fail(origin, "sweep.d0_grid", "missing grid");
  cfg.V0_grid = grid_at(j["V0_grid"], origin, "sweep.V0_grid");
  cfg.d0_grid = grid_at(j["d0_grid"], origin, "sweep.d0_grid");
  if (j.contains("B0_grid")) cfg.B0_grid = grid_at(j["B0_grid"], origin, "sweep.B0_grid");
  cfg.horizon_cap = num_at(j, origin, "sweep", "horizon_cap", 0.0);
  cfg.solver = solver_at(j.value("solver", json()), origin, "sweep.solver");
  cfg.N = static_cast<std::size_t>(num_at(j, origin, "sweep", "N", 48.0));
  const std::string prof = j.value("profile", "nshape");
  if (prof == "nshape")
    cfg.profile = Profile1D::NShape;
  else if (prof == "sine")
    cfg.profile = Profile1D::Sine;
  else
    fail(origin, "sweep.profile", "unknown profile '" + prof + "'");
  if (j.contains("support")) cfg.support = interval_at(j["support"], origin, "sweep.support");
  if (j.contains("support2d"))
    cfg.support2d = support2d_at(j["support2d"], origin, "sweep.support2d");
  cfg.threads = static_cast<int>(num_at(j, origin, "sweep", "threads", 0.0));
  return cfg;
}

ValidateOptions validate_at(const json& j, const std::string& origin) {
  ValidateOptions opt;
  auto geti = [&](const char* key, int dflt) {
    return static_cast<int>(num_at(j, origin, "validate", key, static_cast<double>(dflt)));
  };
  opt.comparison_trials = geti("comparison_trials", opt.comparison_trials);
  opt.separatrix_trials = geti("separatrix_trials", opt.separatrix_trials);
  opt.gap_trials = geti("gap_trials", opt.gap_trials);
  opt.riccati_trials = geti("riccati_trials", opt.riccati_trials);
  opt.zeta_checks = geti("zeta_checks", opt.zeta_checks);
  opt.flow_checks = geti("flow_checks", opt.flow_checks);
  opt.ordering_tol = num_at(j, origin, "validate", "ordering_tol", opt.ordering_tol);
  opt.gap_tol = num_at(j, origin, "validate", "gap_tol", opt.gap_tol);
  opt.zeta_tol = num_at(j, origin, "validate", "zeta_tol", opt.zeta_tol);
  opt.slope_tol = num_at(j, origin, "validate", "slope_tol", opt.slope_tol);
  opt.energy_tol = num_at(j, origin, "validate", "energy_tol", opt.energy_tol);
  opt.momentum_tol = num_at(j, origin, "validate", "momentum_tol", opt.momentum_tol);
  opt.max_principle_tol =
      num_at(j, origin, "validate", "max_principle_tol", opt.max_principle_tol);
  opt.run_N = static_cast<std::size_t>(
      num_at(j, origin, "validate", "run_N", static_cast<double>(opt.run_N)));
  opt.run_t_end = num_at(j, origin, "validate", "run_t_end", opt.run_t_end);
  opt.run_dt = num_at(j, origin, "validate", "run_dt", opt.run_dt);
  return opt;
}

}  // namespace

RunSpec parse_config_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": top level must be an object");

  RunSpec spec;
  try {
    if (j.contains("model")) spec.model = model_at(j["model"], origin);
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("simulate")) spec.simulate = simulate_at(j["simulate"], origin);
    if (j.contains("thresholds")) spec.thresholds = thresholds_at(j["thresholds"], origin);
    if (j.contains("sweep")) spec.sweep = sweep_at(j["sweep"], origin, spec.model);
    if (j.contains("validate")) {
      spec.validate = validate_at(j["validate"], origin);
      spec.validate->seed = spec.seed;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return spec;
}

RunSpec parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace flockhd
