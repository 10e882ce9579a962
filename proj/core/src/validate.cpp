#include "flockhd/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "flockhd/comparison.hpp"
#include "flockhd/diagnostics.hpp"
#include "flockhd/dynamics1d.hpp"
#include "flockhd/ode.hpp"
#include "flockhd/rng.hpp"

namespace flockhd {

namespace {

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

MajorantParams random_params(Rng& rng) {
  const double gamma = rng.uniform(0.2, 1.0);
  const double Gamma = gamma + rng.uniform(0.0, 1.0);
  const double C = rng.uniform(0.0, 1.0);
  const double G = rng.uniform(0.2, 1.5);
  return MajorantParams{gamma, Gamma, C, G};
}

ValidateItem check_anchors() {
  ValidateItem item{"curve_anchors", false, ""};
  const MajorantParams mp{0.5, 1.0, 0.5, 0.5};
  const ThresholdCurve up = sigma_plus_1d(mp, 1.0);
  const ThresholdCurve lo = sigma_minus_1d(mp, 1.0);
  const MajorantParams mt{1.0, 1.0, 2.0, 0.5};
  const ThresholdCurve mtc = mt_sigma_curve(mt, 1.0);
  const ThresholdCurve sep = integrate_separatrix(1.3, 0.7, 0.9, 1.0);
  const GapParams gp{0.2, 0.25};
  const ThresholdCurve h = h_curve_2d(mp, gp, 1.0);
  const ThresholdCurve z = zeta_curve(mp, gp, 1.0);
  const bool ok = up.anchor() == -mp.gamma && lo.anchor() == -mp.Gamma && mtc.anchor() == -1.0 &&
                  sep.anchor() == -1.3 && h.anchor() == -mp.gamma + gp.delta &&
                  z.anchor() == gp.B;
  item.pass = ok;
  item.detail = ok ? "all anchors exact" : "an anchor is off";
  return item;
}

ValidateItem check_slopes(double slope_tol) {
  ValidateItem item{"curve_limit_slopes", false, ""};
  const double h = 1e-3;
  double worst = 0.0;
  {
    const MajorantParams mp{0.5, 1.0, 0.5, 0.5};
    const ThresholdCurve up = sigma_plus_1d(mp, 1.0);
    const double fd = (up.eval(h) - up.anchor()) / h;
    worst = std::max(worst, std::abs(fd - mp.C / (mp.gamma + mp.G)));
    const ThresholdCurve lo = sigma_minus_1d(mp, 1.0);
    const double fd2 = (lo.eval(h) - lo.anchor()) / h;
    worst = std::max(worst, std::abs(fd2 + mp.C / (mp.Gamma + mp.G)));
  }
  {
    const double E = 1.0, F = 1.0, G = 1.0;
    const ThresholdCurve sep = integrate_separatrix(E, F, G, 1.0);
    const double fd = (sep.eval(h) - sep.anchor()) / h;
    worst = std::max(worst, std::abs(fd + F / (E + G)));
  }
  item.pass = worst <= slope_tol;
  item.detail = fmt("worst limit-slope error %.3g (tol %.3g)", worst, slope_tol);
  return item;
}

ValidateItem check_comparison(CompareCase c, const char* name, int trials, double tol,
                              Rng& rng) {
  int held = 0, violated = 0, discarded = 0, attempts = 0;
  while (held + violated < trials && attempts < 40 * trials) {
    ++attempts;
    const MajorantParams mp = random_params(rng);
    const ComparisonTrial trial = make_comparison_trial(mp, c, rng);
    switch (comparison_harness(mp, c, trial, tol)) {
      case TrialOutcome::Held: ++held; break;
      case TrialOutcome::Violated: ++violated; break;
      case TrialOutcome::Discarded: ++discarded; break;
    }
  }
  ValidateItem item{std::string("comparison_") + name, violated == 0 && held > 0, ""};
  item.detail = fmt("%d held, %d violated, %d discarded", held, violated, discarded);
  return item;
}

ValidateItem check_separatrix(int trials, Rng& rng) {
  int ok_above = 0, ok_below = 0, usable = 0, attempts = 0;
  while (usable < trials && attempts < 8 * trials) {
    ++attempts;
    const double E = rng.uniform(0.3, 1.8);
    const double F = rng.uniform(-1.2, 1.2);
    const double G = rng.uniform(0.3, 1.8);
    const double eta0 = rng.uniform(0.3, 2.0);
    const SeparatrixTrialResult r = separatrix_trial(E, F, G, eta0);
    if (!r.curve_usable) continue;
    ++usable;
    if (r.converged_above) ++ok_above;
    if (r.diverged_below) ++ok_below;
  }
  ValidateItem item{"separatrix_classification",
                    usable > 0 && ok_above == usable && ok_below == usable, ""};
  item.detail = fmt("%d/%d converged above, %d/%d diverged below", ok_above, usable, ok_below,
                    usable);
  return item;
}

ValidateItem check_gap(int trials, double tol, Rng& rng) {
  int held = 0;
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const MajorantParams mp = random_params(rng);
    const double B = rng.uniform(0.4, 3.0);
    const GapTrialResult r = spectral_gap_trial(mp, B, rng, 10.0, tol);
    worst = std::max(worst, r.worst_ratio);
    if (r.bound_held) ++held;
  }
  ValidateItem item{"spectral_gap_bound", held == trials, ""};
  item.detail = fmt("%d/%d trials held, worst ratio %.12g", held, trials, worst);
  return item;
}

ValidateItem check_riccati(int trials, Rng& rng) {
  // boundary sharpness at c = 0: both thresholds sit at -gamma / -Gamma
  bool boundary_ok = true;
  for (int k = 0; k < 20; ++k) {
    const double gamma = rng.uniform(0.2, 1.5);
    const double Gamma = gamma + rng.uniform(0.0, 1.0);
    boundary_ok = boundary_ok &&
                  riccati_classify(gamma, Gamma, 0.0, -gamma) == RiccatiClass::BoundedForAll &&
                  riccati_classify(gamma, Gamma, 0.0, -gamma - 1e-12) !=
                      RiccatiClass::BoundedForAll &&
                  riccati_classify(gamma, Gamma, 0.0, -Gamma) != RiccatiClass::BlowUp &&
                  riccati_classify(gamma, Gamma, 0.0, -Gamma - 1e-9) == RiccatiClass::BlowUp;
  }

  int agree = 0, total = 0;
  while (total < trials) {
    const double gamma = rng.uniform(0.2, 1.5);
    const double Gamma = gamma + rng.uniform(0.0, 1.0);
    const double c = rng.uniform(0.0, 0.6);
    const double span = 2.0 * (Gamma + 1.0);
    const double d0 = -span + rng.uniform01() * (span + 1.0);
    // skip the marginal band where finite-horizon integration cannot decide
    const double disc = gamma * gamma - 4.0 * c;
    if (disc >= 0.0) {
      const double thr = -0.5 * (gamma + std::sqrt(disc));
      if (std::abs(d0 - thr) < 0.02 * (1.0 + std::abs(thr))) continue;
    }
    const double blow_thr = -0.5 * (Gamma + std::sqrt(Gamma * Gamma + 4.0 * c));
    if (std::abs(d0 - blow_thr) < 0.02 * (1.0 + std::abs(blow_thr))) continue;
    ++total;
    if (riccati_adversarial_check(gamma, Gamma, c, d0)) ++agree;
  }
  ValidateItem item{"riccati_agreement", boundary_ok && agree == total, ""};
  item.detail = fmt("%d/%d adversarial integrations agree, boundary %s", agree, total,
                    boundary_ok ? "sharp" : "NOT sharp");
  return item;
}

ValidateItem check_zeta(int checks, double tol, Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < checks; ++k) {
    const double C = rng.uniform(0.1, 1.5);
    const double G = rng.uniform(0.2, 1.5);
    const double B = rng.uniform(0.2, 2.0);
    const double delta = (k % 4 == 0) ? G : rng.uniform(0.2, 1.5);  // include delta = G
    const GapParams gp{delta, B};
    const double x0 = delta * B / (2.0 * C);
    const double h = 1e-9 * x0;
    const auto left = zeta_value(gp, C, G, x0 - h);
    const auto right = zeta_value(gp, C, G, x0 + h);
    if (!left || !right) return {"zeta_continuity", false, "breakpoint fell out of domain"};
    worst = std::max(worst, std::abs(*left - *right));
    // domain endpoint closes at zero
    const double xe = zeta_domain_end(gp, C, G);
    const auto end = zeta_value(gp, C, G, xe);
    if (!end) return {"zeta_continuity", false, "right endpoint not evaluable"};
    worst = std::max(worst, std::abs(*end));
  }
  ValidateItem item{"zeta_continuity", worst <= tol, ""};
  item.detail = fmt("worst breakpoint jump %.3g (tol %.3g)", worst, tol);
  return item;
}

// Flow probe of the divergence threshold: starts just above h(V0) must keep
// the floor -gamma + delta under the worst-case scalar flow, starts well
// below must lose it.
ValidateItem check_h_flow(int probes, Rng& rng, std::vector<std::string>& notes) {
  int ok = 0, total = 0, attempts = 0;
  while (total < probes && attempts < 10 * probes) {
    ++attempts;
    MajorantParams mp = random_params(rng);
    if (mp.C < 0.05) mp.C = 0.05;
    const double B = rng.uniform(0.05, mp.gamma / std::sqrt(2.0) * 0.95);
    const double delta_max = std::sqrt(mp.gamma * mp.gamma - 2.0 * B * B);
    const double delta = rng.uniform(0.3 * delta_max, 0.95 * delta_max);
    const GapParams gp{delta, B};
    const double flat_end = (mp.gamma * mp.gamma - delta * delta - 2.0 * B * B) / (4.0 * mp.C);
    const double V0 = flat_end + rng.uniform(0.2, 1.5);
    ThresholdCurve h;
    try {
      h = h_curve_2d(mp, gp, V0 * 1.05);
    } catch (const StiffCurveError&) {
      continue;
    }
    if (h.truncated || h.x_end() < V0) continue;
    ++total;

    auto flow = [&](double d0) {
      std::array<double, 2> y{d0, V0};
      double t = 0.0;
      double floor_min = y[0];
      auto rhs = [&](double, const std::array<double, 2>& s) {
        const double p = s[0] < 0.0 ? mp.gamma : mp.Gamma;
        return std::array<double, 2>{
            -0.5 * (s[0] * s[0] + 2.0 * p * s[0] + 4.0 * mp.C * s[1] + 2.0 * B * B),
            -mp.G * s[1]};
      };
      while (t < 80.0 / std::min(mp.gamma, mp.G)) {
        floor_min = std::min(floor_min, y[0]);
        if (y[0] < -1e3) break;
        const double dt = std::min(2e-3, 0.2 / (1.0 + std::abs(y[0])));
        y = rk4_step(rhs, t, y, dt);
        t += dt;
      }
      return floor_min;
    };

    const double margin = 0.05 * (1.0 + std::abs(h.eval(V0)));
    const bool above_holds = flow(h.eval(V0) + margin) >= -mp.gamma + delta - 1e-6;
    const bool below_fails = flow(h.eval(V0) - margin) < -mp.gamma + delta;
    if (above_holds && below_fails) ++ok;
  }
  ValidateItem item{"h_curve_flow_orientation", total > 0 && ok == total, ""};
  item.detail = fmt("%d/%d probes consistent", ok, total);
  notes.push_back(item.pass
                      ? "divergence threshold curve integrated with the printed orientation; "
                        "flow probes found no sign inconsistency"
                      : "divergence threshold curve flow probes detected an orientation "
                        "inconsistency; see h_curve_flow_orientation");
  return item;
}

struct RunCheck {
  ValidateItem conservation;
  ValidateItem max_principle;
  ValidateItem energy;
  ValidateItem flocking;
};

RunCheck run_and_check(const ModelParams& model, const char* tag, const ValidateOptions& opt) {
  RunCheck rc;
  const std::string prefix = std::string(tag) + "_";
  Ensemble1D ens = initial_data_1d(0.1, -0.3, Interval{-0.5, 0.5}, Profile1D::NShape, opt.run_N,
                                   model.mass);
  const double mass0 = ens.total_mass();
  const double p0 = ens.momentum();
  double umax_prev = *std::max_element(ens.u.begin(), ens.u.end());
  double umin_prev = *std::min_element(ens.u.begin(), ens.u.end());
  double t_prev = ens.t;
  double energy_prev = free_energy(ens, model);
  double worst_momentum = 0.0, worst_principle = 0.0, worst_energy = 0.0, worst_mass = 0.0;

  std::vector<DiagnosticsRecord> records;
  records.push_back(make_record(ens, model));
  RunOptions ro;
  ro.solver.dt_base = opt.run_dt;
  ro.solver.adaptive = true;
  ro.t_end = opt.run_t_end;
  ro.record_every = 1;
  run_1d(ens, model, ro, [&](const Ensemble1D& e) {
    if (e.t == t_prev) return;
    worst_mass = std::max(worst_mass, std::abs(e.total_mass() - mass0));
    worst_momentum = std::max(worst_momentum, std::abs(e.momentum() - p0));
    const double umax = *std::max_element(e.u.begin(), e.u.end());
    const double umin = *std::min_element(e.u.begin(), e.u.end());
    const double dt = e.t - t_prev;
    worst_principle = std::max(
        {worst_principle, (umax - umax_prev) / dt, (umin_prev - umin) / dt});
    const double energy = free_energy(e, model);
    worst_energy = std::max(worst_energy, energy - energy_prev);
    umax_prev = umax;
    umin_prev = umin;
    t_prev = e.t;
    energy_prev = energy;
    records.push_back(make_record(e, model));
  });

  const bool cs = model.model == ModelParams::Model::CS;
  rc.conservation.name = prefix + "conservation";
  if (cs) {
    rc.conservation.pass =
        worst_mass == 0.0 && worst_momentum <= opt.momentum_tol * (1.0 + std::abs(p0));
    rc.conservation.detail =
        fmt("mass drift %.3g, momentum drift %.3g", worst_mass, worst_momentum);
  } else {
    rc.conservation.pass = worst_mass == 0.0;  // momentum drift is permitted
    rc.conservation.detail = fmt("mass drift %.3g, momentum drift %.3g (not conserved)",
                                 worst_mass, worst_momentum);
  }

  rc.max_principle.name = prefix + "maximum_principle";
  rc.max_principle.pass = worst_principle <= opt.max_principle_tol;
  rc.max_principle.detail = fmt("worst expansion rate %.3g per unit time", worst_principle);

  rc.energy.name = prefix + "free_energy_monotone";
  rc.energy.pass = worst_energy <= opt.energy_tol;
  rc.energy.detail = fmt("worst per-step increase %.3g (tol %.3g)", worst_energy,
                         opt.energy_tol);

  rc.flocking.name = prefix + "flocking_decay";
  const double D = flock_diameter(model, records.front().S, records.front().V);
  const FlockingReport fr = flocking_check(records, model, D, opt.run_N);
  rc.flocking.pass = fr.pass();
  rc.flocking.detail = fmt("D=%.6g, worst S ratio %.6g, worst V ratio %.6g, rate %.4g vs %.4g",
                           D, fr.worst_diameter_ratio, fr.worst_decay_ratio, fr.fitted_rate,
                           -fr.guaranteed_rate);
  return rc;
}

}  // namespace

ValidateReport run_validation(const ValidateOptions& opt) {
  ValidateReport rep;
  Rng rng(opt.seed);

  rep.items.push_back(check_anchors());
  rep.items.push_back(check_slopes(opt.slope_tol));
  rep.items.push_back(check_comparison(CompareCase::C1a, "1a", opt.comparison_trials,
                                       opt.ordering_tol, rng));
  rep.items.push_back(check_comparison(CompareCase::C1b, "1b", opt.comparison_trials,
                                       opt.ordering_tol, rng));
  rep.items.push_back(check_comparison(CompareCase::C2a, "2a", opt.comparison_trials,
                                       opt.ordering_tol, rng));
  rep.items.push_back(check_comparison(CompareCase::C2b, "2b", opt.comparison_trials,
                                       opt.ordering_tol, rng));
  rep.items.push_back(check_separatrix(opt.separatrix_trials, rng));
  rep.items.push_back(check_gap(opt.gap_trials, opt.gap_tol, rng));
  rep.items.push_back(check_riccati(opt.riccati_trials, rng));
  rep.items.push_back(check_zeta(opt.zeta_checks, opt.zeta_tol, rng));
  rep.items.push_back(check_h_flow(opt.flow_checks, rng, rep.notes));

  const InfluenceKernel kernel = InfluenceKernel::power_law(0.5);
  const ModelParams cs = make_model(ModelParams::Model::CS, 1.0, kernel);
  const ModelParams mt = make_model(ModelParams::Model::MT, 1.0, kernel);
  const RunCheck rc_cs = run_and_check(cs, "cs", opt);
  const RunCheck rc_mt = run_and_check(mt, "mt", opt);
  rep.items.push_back(rc_cs.conservation);
  rep.items.push_back(rc_cs.max_principle);
  rep.items.push_back(rc_cs.energy);
  rep.items.push_back(rc_cs.flocking);
  rep.items.push_back(rc_mt.conservation);
  rep.items.push_back(rc_mt.max_principle);
  rep.items.push_back(rc_mt.energy);
  rep.items.push_back(rc_mt.flocking);

  rep.notes.push_back(
      "2x2 gradient quadratic term is the literal matrix square; the scalar reduction of the "
      "divergence dynamics is cross-checked by the trace audit in the dynamics tests");
  return rep;
}

}  // namespace flockhd
