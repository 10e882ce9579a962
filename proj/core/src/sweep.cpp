#include "flockhd/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace flockhd {

namespace {

double support_diameter_2d(const Support2D& s) {
  if (s.shape == Support2D::Shape::Disk) return s.x1.length();
  const double L1 = s.x1.length(), L2 = s.x2.length();
  return std::sqrt(L1 * L1 + L2 * L2);
}

// Majorant constants for the configured model at flocking diameter D.
MajorantParams point_params(const ModelParams& model, double D) {
  if (model.model == ModelParams::Model::MT) return mt_majorant_params(model.kernel, D);
  return cs_majorant_params(model, D);
}

// Regularity certificate for the scalar slope dynamics: with the forcing
// bounded by C V(t) and V nonincreasing, every slope at or above the lower
// root of -d^2 - gamma d - C V stays bounded for all later times.
bool regular_certificate_1d(const MajorantParams& mp, double V_now, double e_min) {
  const double c = mp.C * V_now;
  const double disc = mp.gamma * mp.gamma - 4.0 * c;
  if (disc < 0.0) return false;
  return e_min >= -0.5 * (mp.gamma + std::sqrt(disc)) + 1e-9;
}

// 2D analog: any off-trace budget B at or above the measured one works, so a
// few candidates are scanned; the divergence must sit above the invariant
// root -gamma + sqrt(gamma^2 - 4c - 2B^2), which must itself clear the gap
// floor -gamma + 2c/B.
bool regular_certificate_2d(const MajorantParams& mp, double V_now, double d_min, double B_now) {
  const double c = mp.C * V_now;
  const double b_cap = mp.gamma / std::sqrt(2.0);
  for (double frac : {0.0, 0.1, 0.25, 0.5, 0.75, 0.99}) {
    const double B = std::max(B_now, frac * b_cap);
    if (B > b_cap) continue;
    const double disc = mp.gamma * mp.gamma - 4.0 * c - 2.0 * B * B;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    if (B > 0.0 && root < 2.0 * c / B) continue;
    if (B == 0.0 && c > 0.0) continue;
    if (d_min >= -mp.gamma + root + 1e-9) return true;
  }
  return false;
}

struct CachedCurves {
  double D = 0.0;
  MajorantParams mp;
  ThresholdCurve upper;
  ThresholdCurve lower;
  bool usable = false;
};

CachedCurves curves_for(const ModelParams& model, double S0, double V0) {
  CachedCurves c;
  c.D = flock_diameter(model, S0, V0);
  c.mp = point_params(model, c.D);
  const double x_max = std::max(V0 * 1.05, 1e-4);
  try {
    c.upper = sigma_plus_1d(c.mp, x_max);
    c.lower = sigma_minus_1d(c.mp, x_max);
    c.usable = true;
  } catch (const StiffCurveError& e) {
    c.upper = e.partial;
    c.lower = e.partial;
    c.usable = false;
  }
  return c;
}

ThresholdClass fast_prediction_1d(const CachedCurves& c, double V0, double d0) {
  if (!c.usable) return ThresholdClass::Indeterminate;
  return classify_against_curves(c.upper, c.lower, V0, d0);
}

// Existential scan over admissible (delta, B) pairs for the 2D fast curves.
ThresholdClass fast_prediction_2d(const MajorantParams& mp, double V0, double d0, double B0) {
  const double b_hi = mp.gamma / std::sqrt(2.0);
  const double b_lo = std::max(B0, 1e-6 * mp.gamma);
  if (b_lo <= b_hi) {
    for (int bi = 0; bi < 8; ++bi) {
      const double B = b_lo + (b_hi - b_lo) * (static_cast<double>(bi) + 0.5) / 8.0;
      const double delta_max = std::sqrt(mp.gamma * mp.gamma - 2.0 * B * B);
      for (int di = 0; di < 6; ++di) {
        const double delta = delta_max * (static_cast<double>(di) + 0.5) / 6.0;
        if (!(delta > 0.0)) continue;
        const auto z = zeta_value(GapParams{delta, B}, mp.C, mp.G, V0);
        if (!z || B0 > *z) continue;
        try {
          const ThresholdCurve h =
              h_curve_2d(mp, GapParams{delta, B}, std::max(V0 * 1.05, 1e-4));
          if (V0 <= h.x_end() && d0 >= h.eval(V0) + h.margin(V0)) {
            return ThresholdClass::Subcritical;
          }
        } catch (const StiffCurveError&) {
          continue;
        }
      }
    }
  }
  // no fast-alignment blow-up clause; fall back to the closed-form one
  const ThresholdClass closed = closed_threshold_2d(mp, V0, d0, B0);
  return closed == ThresholdClass::Supercritical ? closed : ThresholdClass::Indeterminate;
}

PhasePoint classify_point_1d(const SweepConfig& cfg, const CachedCurves& curves, double V0,
                             double d0) {
  PhasePoint pt;
  pt.V0 = V0;
  pt.d0 = d0;
  pt.predicted_closed = closed_threshold_1d(curves.mp, V0, d0);
  pt.predicted_fast = fast_prediction_1d(curves, V0, d0);

  Ensemble1D ens;
  try {
    ens = initial_data_1d(V0, d0, cfg.support, cfg.profile, cfg.N, cfg.model.mass);
  } catch (const std::invalid_argument& ex) {
    pt.outcome = Outcome::Undecided;
    pt.note = ex.what();
    return pt;
  }

  double horizon = 50.0 / std::max(curves.mp.G, 1e-6);
  if (cfg.horizon_cap > 0.0) horizon = std::min(horizon, cfg.horizon_cap);

  const double V_init = diameters(ens).second;
  const double v_target = 1e-6 * V_init;
  int k = 0;
  while (ens.t < horizon) {
    StepConfig solver = cfg.solver;
    solver.dt_base = std::min(solver.dt_base, horizon - ens.t);
    std::optional<BlowUpInfo> blow;
    try {
      blow = step(ens, cfg.model, solver);
    } catch (const NumericalFailure& ex) {
      pt.outcome = Outcome::Undecided;
      pt.note = ex.what();
      pt.t_out = ex.t_last;
      return pt;
    }
    if (blow) {
      pt.outcome = Outcome::BlowUp;
      pt.t_out = blow->t_c;
      return pt;
    }
    if (++k % 16 == 0 || ens.t >= horizon) {
      const double V_now = diameters(ens).second;
      if (V_now <= v_target + 1e-300 &&
          regular_certificate_1d(curves.mp, V_now, ens.min_slope())) {
        pt.outcome = Outcome::GloballyRegular;
        pt.t_out = ens.t;
        return pt;
      }
    }
  }
  const double V_now = diameters(ens).second;
  if (V_now <= v_target + 1e-300 && regular_certificate_1d(curves.mp, V_now, ens.min_slope())) {
    pt.outcome = Outcome::GloballyRegular;
    pt.t_out = ens.t;
  } else {
    pt.outcome = Outcome::Undecided;
    pt.t_out = ens.t;
    pt.note = "horizon reached without certificate";
  }
  return pt;
}

PhasePoint classify_point_2d(const SweepConfig& cfg, double V0, double d0, double B0) {
  PhasePoint pt;
  pt.V0 = V0;
  pt.d0 = d0;
  pt.B0 = B0;

  const double S0 = support_diameter_2d(cfg.support2d);
  const double D = flock_diameter(cfg.model, S0, V0);
  const MajorantParams mp = point_params(cfg.model, D);
  pt.predicted_closed = closed_threshold_2d(mp, V0, d0, B0);
  pt.predicted_fast = fast_prediction_2d(mp, V0, d0, B0);

  Ensemble2D ens;
  try {
    ens = initial_data_2d(V0, d0, B0, cfg.support2d, cfg.N, cfg.model.mass);
  } catch (const std::invalid_argument& ex) {
    pt.outcome = Outcome::Undecided;
    pt.note = ex.what();
    return pt;
  }

  double horizon = 50.0 / std::max(mp.G, 1e-6);
  if (cfg.horizon_cap > 0.0) horizon = std::min(horizon, cfg.horizon_cap);

  const double V_init = diameters(ens).second;
  const double v_target = 1e-6 * V_init;
  int k = 0;
  auto b_now = [&]() {
    const DqrsDiagnostics dq = dqrs_diagnostics(ens);
    double b = 0.0;
    for (std::size_t i = 0; i < dq.q.size(); ++i)
      b = std::max({b, std::abs(dq.q[i]), 2.0 * std::abs(dq.r[i]), 2.0 * std::abs(dq.s[i])});
    return b;
  };
  while (ens.t < horizon) {
    StepConfig solver = cfg.solver;
    solver.dt_base = std::min(solver.dt_base, horizon - ens.t);
    std::optional<BlowUpInfo> blow;
    try {
      blow = step_2d(ens, cfg.model, solver);
    } catch (const NumericalFailure& ex) {
      pt.outcome = Outcome::Undecided;
      pt.note = ex.what();
      pt.t_out = ex.t_last;
      return pt;
    }
    if (blow) {
      pt.outcome = Outcome::BlowUp;
      pt.t_out = blow->t_c;
      return pt;
    }
    if (++k % 16 == 0) {
      const double V_now = diameters(ens).second;
      if (V_now <= v_target + 1e-300 &&
          regular_certificate_2d(mp, V_now, ens.min_divergence(), b_now())) {
        pt.outcome = Outcome::GloballyRegular;
        pt.t_out = ens.t;
        return pt;
      }
    }
  }
  const double V_now = diameters(ens).second;
  if (V_now <= v_target + 1e-300 &&
      regular_certificate_2d(mp, V_now, ens.min_divergence(), b_now())) {
    pt.outcome = Outcome::GloballyRegular;
    pt.t_out = ens.t;
  } else {
    pt.outcome = Outcome::Undecided;
    pt.t_out = ens.t;
    pt.note = "horizon reached without certificate";
  }
  return pt;
}

}  // namespace

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::GloballyRegular: return "globally_regular";
    case Outcome::BlowUp: return "blow_up";
    case Outcome::Undecided: return "undecided";
  }
  return "unknown";
}

const char* threshold_class_name(ThresholdClass c) {
  switch (c) {
    case ThresholdClass::Subcritical: return "subcritical";
    case ThresholdClass::Supercritical: return "supercritical";
    case ThresholdClass::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

void SweepConfig::validate() const {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("sweep: dimension must be 1 or 2");
  if (!std::is_sorted(V0_grid.begin(), V0_grid.end()) ||
      !std::is_sorted(d0_grid.begin(), d0_grid.end()) ||
      !std::is_sorted(B0_grid.begin(), B0_grid.end()))
    throw std::invalid_argument("sweep: grids must be sorted");
  if (N == 0) throw std::invalid_argument("sweep: N must be positive");
  if (horizon_cap < 0.0) throw std::invalid_argument("sweep: horizon cap must be >= 0");
}

PhasePoint classify_point(const SweepConfig& cfg, double V0, double d0, double B0) {
  if (cfg.dimension == 2) return classify_point_2d(cfg, V0, d0, B0);
  const CachedCurves curves = curves_for(cfg.model, cfg.support.length(), V0);
  return classify_point_1d(cfg, curves, V0, d0);
}

std::vector<PhasePoint> phase_diagram(const SweepConfig& cfg, SweepSummary* summary) {
  cfg.validate();
  std::vector<double> b_grid = cfg.B0_grid;
  if (cfg.dimension == 1 || b_grid.empty()) b_grid = {0.0};

  struct Task {
    double V0, d0, B0;
    std::size_t v_index;
  };
  std::vector<Task> tasks;
  for (std::size_t vi = 0; vi < cfg.V0_grid.size(); ++vi)
    for (double d0 : cfg.d0_grid)
      for (double B0 : b_grid) tasks.push_back({cfg.V0_grid[vi], d0, B0, vi});

  // Curves depend on V0 only (through the flocking diameter); build one cache
  // entry per grid column.
  std::vector<CachedCurves> cache;
  if (cfg.dimension == 1) {
    cache.reserve(cfg.V0_grid.size());
    for (double V0 : cfg.V0_grid)
      cache.push_back(curves_for(cfg.model, cfg.support.length(), V0));
  }

  std::vector<PhasePoint> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& tk = tasks[i];
      out[i] = cfg.dimension == 2
                   ? classify_point_2d(cfg, tk.V0, tk.d0, tk.B0)
                   : classify_point_1d(cfg, cache[tk.v_index], tk.V0, tk.d0);
    }
  };

  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(tasks.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (summary) *summary = summarize(out);
  return out;
}

SweepSummary summarize(const std::vector<PhasePoint>& points) {
  SweepSummary s;
  s.points = points.size();
  for (const PhasePoint& p : points) {
    switch (p.outcome) {
      case Outcome::GloballyRegular: ++s.regular; break;
      case Outcome::BlowUp: ++s.blowup; break;
      case Outcome::Undecided:
        ++s.undecided;
        if (p.note == "horizon reached without certificate")
          ++s.undecided_horizon;
        else
          ++s.undecided_infeasible;
        break;
    }
    const bool pred_sub = p.predicted_closed == ThresholdClass::Subcritical ||
                          p.predicted_fast == ThresholdClass::Subcritical;
    const bool pred_super = p.predicted_closed == ThresholdClass::Supercritical ||
                            p.predicted_fast == ThresholdClass::Supercritical;
    if (pred_sub && p.outcome == Outcome::BlowUp) ++s.subcritical_predicted_blowups;
    if (pred_super && p.outcome == Outcome::GloballyRegular)
      ++s.supercritical_predicted_survivors;
    if (p.predicted_closed == ThresholdClass::Subcritical &&
        p.predicted_fast != ThresholdClass::Subcritical)
      s.closed_subset_of_fast = false;
    if (p.predicted_fast == ThresholdClass::Subcritical &&
        p.predicted_closed != ThresholdClass::Subcritical)
      ++s.fast_only_subcritical;
  }
  return s;
}

}  // namespace flockhd
