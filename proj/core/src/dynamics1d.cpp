#include "flockhd/dynamics1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace flockhd {

namespace {

struct PairSums {
  std::vector<double> force;    // sum_j w_j phi_ij (u_j - u_i)
  std::vector<double> phisum;   // Phi_i = sum_j w_j phi_ij (self term included)
  std::vector<double> gradsum;  // sum_j w_j phi'_ij sgn(x_i-x_j) (u_j - u_i)
  std::vector<double> dphisum;  // Phi'_i = sum_j w_j phi'_ij sgn(x_i-x_j)

  void reset(std::size_t n, bool need_dphi) {
    force.assign(n, 0.0);
    phisum.assign(n, 0.0);
    gradsum.assign(n, 0.0);
    if (need_dphi) dphisum.assign(n, 0.0);
  }
};

// Symmetric pass over unordered pairs; every shared product is reused on both
// sides so the weighted force sum cancels pairwise to rounding.
void pairwise_sums(const std::vector<double>& x, const std::vector<double>& u,
                   const std::vector<double>& w, const InfluenceKernel& kernel, bool need_dphi,
                   PairSums& s) {
  const std::size_t n = x.size();
  s.reset(n, need_dphi);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i], ui = u[i], wi = w[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = xi - x[j];
      const double r = std::abs(dx);
      const double sgn = dx > 0.0 ? 1.0 : (dx < 0.0 ? -1.0 : 0.0);
      double phi, dphi;
      kernel.pair_eval(r, phi, dphi);
      const double du = u[j] - ui;
      const double f = phi * du;
      s.force[i] += w[j] * f;
      s.force[j] -= wi * f;
      s.phisum[i] += w[j] * phi;
      s.phisum[j] += wi * phi;
      const double g = dphi * sgn * du;
      s.gradsum[i] += w[j] * g;
      s.gradsum[j] += wi * g;
      if (need_dphi) {
        const double dp = dphi * sgn;
        s.dphisum[i] += w[j] * dp;
        s.dphisum[j] -= wi * dp;
      }
    }
    // self term: phi(0) = 1 enters the alignment strength
    s.phisum[i] += wi;
  }
}

void require_normalization(const PairSums& s) {
  for (double v : s.phisum)
    if (!(v > 0.0))
      throw std::domain_error("normalized model: interaction normalization Phi vanished");
}

struct Rates {
  std::vector<double> dx, du, de, drho;
  void resize(std::size_t n) {
    dx.resize(n);
    du.resize(n);
    de.resize(n);
    drho.resize(n);
  }
};

void eval_rates(const std::vector<double>& x, const std::vector<double>& u,
                const std::vector<double>& e, const std::vector<double>& rho,
                const std::vector<double>& w, const ModelParams& model, PairSums& s, Rates& r) {
  const std::size_t n = x.size();
  const bool mt = model.model == ModelParams::Model::MT;
  pairwise_sums(x, u, w, model.kernel, mt, s);
  if (mt) require_normalization(s);
  r.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.dx[i] = u[i];
    if (mt) {
      const double inv = 1.0 / s.phisum[i];
      r.du[i] = s.force[i] * inv;
      r.de[i] = -e[i] * e[i] - e[i] +
                s.gradsum[i] * inv - s.force[i] * s.dphisum[i] * inv * inv;
    } else {
      r.du[i] = s.force[i];
      r.de[i] = -e[i] * e[i] - e[i] * s.phisum[i] + s.gradsum[i];
    }
    r.drho[i] = -rho[i] * e[i];
  }
}

}  // namespace

double Ensemble1D::total_mass() const { return std::accumulate(w.begin(), w.end(), 0.0); }

double Ensemble1D::momentum() const {
  double p = 0.0;
  for (std::size_t i = 0; i < size(); ++i) p += w[i] * u[i];
  return p;
}

double Ensemble1D::min_slope() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : e) m = std::min(m, v);
  return m;
}

void Ensemble1D::check_consistent() const {
  const std::size_t n = x.size();
  if (u.size() != n || w.size() != n || e.size() != n || rho.size() != n ||
      offset.size() != n)
    throw std::invalid_argument("ensemble arrays must have equal length");
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] < 0.0) throw std::invalid_argument("masses must be nonnegative");
    if (rho[i] < 0.0) throw std::invalid_argument("densities must be nonnegative");
  }
}

void velocity_rhs(const Ensemble1D& ens, const ModelParams& model, std::vector<double>& du) {
  PairSums s;
  const bool mt = model.model == ModelParams::Model::MT;
  pairwise_sums(ens.x, ens.u, ens.w, model.kernel, false, s);
  if (mt) require_normalization(s);
  du.resize(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i)
    du[i] = mt ? s.force[i] / s.phisum[i] : s.force[i];
}

void slope_rhs(const Ensemble1D& ens, const ModelParams& model, std::vector<double>& de) {
  PairSums s;
  const bool mt = model.model == ModelParams::Model::MT;
  pairwise_sums(ens.x, ens.u, ens.w, model.kernel, mt, s);
  if (mt) require_normalization(s);
  de.resize(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (mt) {
      const double inv = 1.0 / s.phisum[i];
      de[i] = -ens.e[i] * ens.e[i] - ens.e[i] + s.gradsum[i] * inv -
              s.force[i] * s.dphisum[i] * inv * inv;
    } else {
      de[i] = -ens.e[i] * ens.e[i] - ens.e[i] * s.phisum[i] + s.gradsum[i];
    }
  }
}

void density_rhs(const Ensemble1D& ens, std::vector<double>& drho) {
  drho.resize(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) drho[i] = -ens.rho[i] * ens.e[i];
}

namespace {

struct Rk4Workspace {
  Rates k1, k2, k3, k4;
  PairSums sums;
  std::vector<double> x, u, e, rho;  // stage state
};

void stage_state(const Ensemble1D& base, const Rates& k, double h, Rk4Workspace& ws) {
  const std::size_t n = base.size();
  ws.x.resize(n);
  ws.u.resize(n);
  ws.e.resize(n);
  ws.rho.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ws.x[i] = base.x[i] + h * k.dx[i];
    ws.u[i] = base.u[i] + h * k.du[i];
    ws.e[i] = base.e[i] + h * k.de[i];
    ws.rho[i] = base.rho[i] + h * k.drho[i];
  }
}

// One RK4 step of size dt applied out of place: base -> out arrays.
void rk4_apply(const Ensemble1D& base, const ModelParams& model, double dt, Rk4Workspace& ws,
               std::vector<double>& x1, std::vector<double>& u1, std::vector<double>& e1,
               std::vector<double>& rho1) {
  eval_rates(base.x, base.u, base.e, base.rho, base.w, model, ws.sums, ws.k1);
  stage_state(base, ws.k1, 0.5 * dt, ws);
  eval_rates(ws.x, ws.u, ws.e, ws.rho, base.w, model, ws.sums, ws.k2);
  stage_state(base, ws.k2, 0.5 * dt, ws);
  eval_rates(ws.x, ws.u, ws.e, ws.rho, base.w, model, ws.sums, ws.k3);
  stage_state(base, ws.k3, dt, ws);
  eval_rates(ws.x, ws.u, ws.e, ws.rho, base.w, model, ws.sums, ws.k4);

  const std::size_t n = base.size();
  x1.resize(n);
  u1.resize(n);
  e1.resize(n);
  rho1.resize(n);
  const double c = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    x1[i] = base.x[i] + c * (ws.k1.dx[i] + 2.0 * ws.k2.dx[i] + 2.0 * ws.k3.dx[i] + ws.k4.dx[i]);
    u1[i] = base.u[i] + c * (ws.k1.du[i] + 2.0 * ws.k2.du[i] + 2.0 * ws.k3.du[i] + ws.k4.du[i]);
    e1[i] = base.e[i] + c * (ws.k1.de[i] + 2.0 * ws.k2.de[i] + 2.0 * ws.k3.de[i] + ws.k4.de[i]);
    rho1[i] = base.rho[i] +
              c * (ws.k1.drho[i] + 2.0 * ws.k2.drho[i] + 2.0 * ws.k3.drho[i] + ws.k4.drho[i]);
  }
}

double vec_min(const std::vector<double>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (double a : v) m = std::min(m, a);
  return m;
}

bool all_finite(const std::vector<double>& v) {
  for (double a : v)
    if (!std::isfinite(a)) return false;
  return true;
}

}  // namespace

std::optional<BlowUpInfo> step(Ensemble1D& ens, const ModelParams& model, const StepConfig& cfg) {
  if (!(cfg.dt_base > 0.0)) throw std::invalid_argument("step: dt_base must be positive");
  ens.check_consistent();

  double dt = cfg.dt_base;
  if (cfg.adaptive) {
    const double emin = ens.min_slope();
    dt = std::min(dt, 0.1 / std::max(1.0, std::abs(emin)));
  }

  Rk4Workspace ws;
  std::vector<double> x1, u1, e1, rho1;
  rk4_apply(ens, model, dt, ws, x1, u1, e1, rho1);

  if (!all_finite(x1) || !all_finite(u1) || !all_finite(e1) || !all_finite(rho1))
    throw NumericalFailure("non-finite state after step", ens.t);

  if (vec_min(e1) < -cfg.blowup_cutoff) {
    // Refine the crossing time within this step by bisection on the substep
    // length, re-integrating from the saved pre-step state each probe.
    double lo = 0.0, hi = dt;
    for (int it = 0; it < 48 && (hi - lo) > 1e-15 * dt; ++it) {
      const double mid = 0.5 * (lo + hi);
      rk4_apply(ens, model, mid, ws, x1, u1, e1, rho1);
      if (!all_finite(e1) || vec_min(e1) < -cfg.blowup_cutoff)
        hi = mid;
      else
        lo = mid;
    }
    rk4_apply(ens, model, hi, ws, x1, u1, e1, rho1);
    std::size_t idx = 0;
    for (std::size_t i = 1; i < e1.size(); ++i)
      if (e1[i] < e1[idx]) idx = i;
    ens.x.swap(x1);
    ens.u.swap(u1);
    ens.e.swap(e1);
    ens.rho.swap(rho1);
    ens.t += hi;
    return BlowUpInfo{ens.t, idx, ens.x[idx]};
  }

  ens.x.swap(x1);
  ens.u.swap(u1);
  ens.e.swap(e1);
  ens.rho.swap(rho1);
  ens.t += dt;
  return std::nullopt;
}

VelocityProfile1D VelocityProfile1D::piecewise_linear(std::vector<double> xs,
                                                      std::vector<double> us) {
  if (xs.size() != us.size() || xs.size() < 2)
    throw std::invalid_argument("profile: need matching xs/us with at least two nodes");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]))
      throw std::invalid_argument("profile: breakpoints must be strictly increasing");
  VelocityProfile1D p;
  p.cosine_ = false;
  p.xs_ = std::move(xs);
  p.us_ = std::move(us);
  return p;
}

VelocityProfile1D VelocityProfile1D::cosine_ramp(double window_lo, double lambda,
                                                 double amplitude) {
  if (!(lambda > 0.0)) throw std::invalid_argument("profile: lambda must be positive");
  VelocityProfile1D p;
  p.cosine_ = true;
  p.lo_ = window_lo;
  p.lambda_ = lambda;
  p.amp_ = amplitude;
  return p;
}

double VelocityProfile1D::value(double x) const {
  if (cosine_) {
    const double xi = (x - lo_) / lambda_;
    if (xi <= 0.0) return amp_;
    if (xi >= 1.0) return -amp_;
    return amp_ * std::cos(M_PI * xi);
  }
  if (x <= xs_.front()) return us_.front();
  if (x >= xs_.back()) return us_.back();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
  return us_[lo] + t * (us_[hi] - us_[lo]);
}

double VelocityProfile1D::slope(double x) const {
  if (cosine_) {
    const double xi = (x - lo_) / lambda_;
    if (xi <= 0.0 || xi >= 1.0) return 0.0;
    return -amp_ * M_PI / lambda_ * std::sin(M_PI * xi);
  }
  if (x <= xs_.front() || x >= xs_.back()) return 0.0;
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
  const std::size_t lo = hi - 1;
  return (us_[hi] - us_[lo]) / (xs_[hi] - xs_[lo]);
}

VelocityProfile1D build_profile_1d(double V0, double d0, Interval support, Profile1D kind) {
  if (!(V0 >= 0.0) || !std::isfinite(d0))
    throw std::invalid_argument("initial data: need V0 >= 0 and finite d0");
  const double L = support.length();
  if (!(L > 0.0)) throw std::invalid_argument("initial data: empty support");
  const double mid = 0.5 * (support.lo + support.hi);

  if (V0 == 0.0) {
    if (d0 != 0.0)
      throw std::invalid_argument("initial data: V0 = 0 forces a constant profile, d0 must be 0");
    return VelocityProfile1D::piecewise_linear({support.lo, support.hi}, {0.0, 0.0});
  }

  if (kind == Profile1D::Sine) {
    if (!(d0 < 0.0))
      throw std::invalid_argument("initial data: sine profile needs d0 < 0");
    const double lambda = M_PI * V0 / (2.0 * std::abs(d0));
    if (lambda > L * (1.0 + 1e-12))
      throw std::invalid_argument("initial data: sine descent does not fit the support");
    return VelocityProfile1D::cosine_ramp(mid - 0.5 * lambda, lambda, 0.5 * V0);
  }

  if (d0 < 0.0) {
    const double wdt = V0 / std::abs(d0);
    if (wdt > L * (1.0 + 1e-12))
      throw std::invalid_argument("initial data: descent of slope d0 does not fit the support");
    std::vector<double> xs{support.lo, mid - 0.5 * wdt, mid + 0.5 * wdt, support.hi};
    std::vector<double> us{0.5 * V0, 0.5 * V0, -0.5 * V0, -0.5 * V0};
    // degenerate flats when the descent spans the whole support
    std::vector<double> fx, fu;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!fx.empty() && !(xs[i] > fx.back() + 1e-14 * std::max(1.0, L))) continue;
      fx.push_back(xs[i]);
      fu.push_back(us[i]);
    }
    return VelocityProfile1D::piecewise_linear(std::move(fx), std::move(fu));
  }

  if (d0 == 0.0) {
    return VelocityProfile1D::piecewise_linear({support.lo, mid, support.hi},
                                               {-0.5 * V0, -0.5 * V0, 0.5 * V0});
  }

  // d0 > 0: two ascending slopes, the flatter one exactly d0
  if (V0 < d0 * L * (1.0 - 1e-12))
    throw std::invalid_argument("initial data: V0 too small for min slope d0 > 0");
  const double u_mid = -0.5 * V0 + d0 * 0.5 * L;
  return VelocityProfile1D::piecewise_linear({support.lo, mid, support.hi},
                                             {-0.5 * V0, u_mid, 0.5 * V0});
}

Ensemble1D initial_data_1d(double V0, double d0, Interval support, Profile1D kind,
                           std::size_t N, double mass) {
  if (N == 0) throw std::invalid_argument("initial data: need at least one particle");
  if (!(mass > 0.0)) throw std::invalid_argument("initial data: mass must be positive");
  const VelocityProfile1D prof = build_profile_1d(V0, d0, support, kind);
  if (V0 > 0.0 && d0 < 0.0) {
    // the descent must be sampled by at least two particles, or the built
    // ensemble does not carry the requested minimum slope
    const double descent =
        kind == Profile1D::Sine ? M_PI * V0 / (2.0 * std::abs(d0)) : V0 / std::abs(d0);
    if (descent < 2.0 * support.length() / static_cast<double>(N))
      throw std::invalid_argument(
          "initial data: N too small to resolve the descent of slope d0");
  }
  const double L = support.length();
  Ensemble1D ens;
  ens.x.resize(N);
  ens.u.resize(N);
  ens.w.assign(N, mass / static_cast<double>(N));
  ens.e.resize(N);
  ens.rho.assign(N, mass / L);
  ens.offset.assign(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    const double xi = support.lo + (static_cast<double>(i) + 0.5) * L / static_cast<double>(N);
    ens.x[i] = xi;
    ens.u[i] = prof.value(xi);
    ens.e[i] = prof.slope(xi);
  }
  return ens;
}

VelocityProfile1D two_blob_profile(const TwoBlobSpec& spec) {
  if (!(spec.left.length() > 0.0) || !(spec.right.length() > 0.0) ||
      !(spec.right.lo > spec.left.hi))
    throw std::invalid_argument("two-blob data: blobs must be disjoint, left of right");
  if (!(spec.slope >= 0.0)) throw std::invalid_argument("two-blob data: slope magnitude >= 0");
  const double c = 0.5 * (spec.left.lo + spec.right.hi);
  const double a = spec.left.lo, b = spec.right.hi;
  return VelocityProfile1D::piecewise_linear({a, b},
                                             {-spec.slope * (a - c), -spec.slope * (b - c)});
}

Ensemble1D two_blob_data_1d(const TwoBlobSpec& spec, std::size_t N, double mass) {
  if (N < 2) throw std::invalid_argument("two-blob data: need at least two particles");
  const VelocityProfile1D prof = two_blob_profile(spec);
  const double len_l = spec.left.length(), len_r = spec.right.length();
  const double total_len = len_l + len_r;
  std::size_t n_l = static_cast<std::size_t>(
      std::round(static_cast<double>(N) * len_l / total_len));
  n_l = std::min(std::max<std::size_t>(n_l, 1), N - 1);
  const std::size_t n_r = N - n_l;

  Ensemble1D ens;
  ens.w.assign(N, mass / static_cast<double>(N));
  ens.rho.assign(N, mass / total_len);
  ens.offset.assign(N, 0.0);
  ens.x.reserve(N);
  auto fill = [&](Interval blob, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
      ens.x.push_back(blob.lo + (static_cast<double>(i) + 0.5) * blob.length() /
                                    static_cast<double>(n));
  };
  fill(spec.left, n_l);
  fill(spec.right, n_r);
  ens.u.resize(N);
  ens.e.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    ens.u[i] = prof.value(ens.x[i]);
    ens.e[i] = prof.slope(ens.x[i]);
  }
  return ens;
}

std::vector<Interval> support_intervals(const Ensemble1D& ens) {
  std::vector<double> xs;
  for (std::size_t i = 0; i < ens.size(); ++i)
    if (!ens.tracer(i)) xs.push_back(ens.x[i]);
  if (xs.empty()) throw std::domain_error("support: no massive particles");
  std::sort(xs.begin(), xs.end());
  if (xs.size() == 1) return {Interval{xs[0], xs[0]}};

  std::vector<double> gaps(xs.size() - 1);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) gaps[i] = xs[i + 1] - xs[i];
  std::vector<double> sorted = gaps;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2),
                   sorted.end());
  const double h = sorted[sorted.size() / 2];
  const double pad = 0.5 * h;
  const double break_gap = std::max(4.0 * h, 1e-12);

  std::vector<Interval> out;
  double lo = xs.front();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (gaps[i] > break_gap) {
      out.push_back({lo - pad, xs[i] + pad});
      lo = xs[i + 1];
    }
  }
  out.push_back({lo - pad, xs.back() + pad});
  return out;
}

double distance_to_support(const Ensemble1D& ens, double x) {
  double d = std::numeric_limits<double>::infinity();
  for (const Interval& iv : support_intervals(ens)) {
    if (x >= iv.lo && x <= iv.hi) return 0.0;
    d = std::min(d, x < iv.lo ? iv.lo - x : x - iv.hi);
  }
  return d;
}

void seed_tracers(Ensemble1D& ens, std::span<const double> offsets,
                  const VelocityProfile1D& u0) {
  const std::vector<Interval> supp = support_intervals(ens);
  auto dist = [&](double x) {
    double d = std::numeric_limits<double>::infinity();
    for (const Interval& iv : supp) {
      if (x >= iv.lo && x <= iv.hi) return 0.0;
      d = std::min(d, x < iv.lo ? iv.lo - x : x - iv.hi);
    }
    return d;
  };

  std::vector<double> placed;
  for (double lambda : offsets) {
    if (!(lambda >= 0.0))
      throw std::invalid_argument("seed_tracers: offsets must be nonnegative");
    std::vector<double> candidates;
    for (const Interval& iv : supp) {
      candidates.push_back(iv.lo - lambda);
      candidates.push_back(iv.hi + lambda);
    }
    for (double c : candidates) {
      if (std::abs(dist(c) - lambda) > 1e-9 * (1.0 + lambda)) continue;
      bool dup = false;
      for (double p : placed)
        if (std::abs(p - c) < 1e-12 * (1.0 + std::abs(c))) dup = true;
      if (dup) continue;
      placed.push_back(c);
      ens.x.push_back(c);
      ens.u.push_back(u0.value(c));
      ens.e.push_back(u0.slope(c));
      ens.w.push_back(0.0);
      ens.rho.push_back(0.0);
      ens.offset.push_back(lambda);
    }
  }
}

RunOutcome1D run_1d(Ensemble1D& ens, const ModelParams& model, const RunOptions& opt,
                    const std::function<void(const Ensemble1D&)>& on_record) {
  if (!(opt.t_end >= ens.t)) throw std::invalid_argument("run: t_end must be >= current time");
  RunOutcome1D out;
  if (on_record) on_record(ens);
  long k = 0;
  bool recorded = true;
  const double t_eps = 1e-12 * std::max(1.0, opt.t_end);
  while (ens.t < opt.t_end - t_eps) {
    StepConfig cfg = opt.solver;
    cfg.dt_base = std::min(cfg.dt_base, opt.t_end - ens.t);
    const auto blow = step(ens, model, cfg);
    ++k;
    recorded = false;
    if (blow) {
      out.blowup = blow;
      if (on_record) on_record(ens);
      return out;
    }
    if (on_record && opt.record_every > 0 && k % opt.record_every == 0) {
      on_record(ens);
      recorded = true;
    }
  }
  if (on_record && !recorded) on_record(ens);
  return out;
}

}  // namespace flockhd
