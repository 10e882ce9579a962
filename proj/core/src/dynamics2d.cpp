#include "flockhd/dynamics2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace flockhd {

namespace {

struct PairSums2D {
  // f: sum_j w_j phi (u_j - u_i), per component
  std::vector<double> f1, f2;
  // phisum: Phi_i (self term included)
  std::vector<double> phisum;
  // q: forcing matrix sum_j w_j (u_j - u_i) (x) grad phi, row-major entries
  std::vector<double> q11, q12, q21, q22;
  // gp: grad Phi_i, per component (normalized model only)
  std::vector<double> gp1, gp2;

  void reset(std::size_t n, bool need_gp) {
    f1.assign(n, 0.0);
    f2.assign(n, 0.0);
    phisum.assign(n, 0.0);
    q11.assign(n, 0.0);
    q12.assign(n, 0.0);
    q21.assign(n, 0.0);
    q22.assign(n, 0.0);
    if (need_gp) {
      gp1.assign(n, 0.0);
      gp2.assign(n, 0.0);
    }
  }
};

void pairwise_sums_2d(const std::vector<double>& x1, const std::vector<double>& x2,
                      const std::vector<double>& u1, const std::vector<double>& u2,
                      const std::vector<double>& w, const InfluenceKernel& kernel, bool need_gp,
                      PairSums2D& s) {
  const std::size_t n = x1.size();
  s.reset(n, need_gp);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi1 = x1[i], xi2 = x2[i], ui1 = u1[i], ui2 = u2[i], wi = w[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx1 = xi1 - x1[j];
      const double dx2 = xi2 - x2[j];
      const double r = std::sqrt(dx1 * dx1 + dx2 * dx2);
      double phi, dphi;
      kernel.pair_eval(r, phi, dphi);
      // grad_{x_i} phi(|x_i - x_j|); zero at coincident points
      const double gscale = r > 0.0 ? dphi / r : 0.0;
      const double g1 = gscale * dx1;
      const double g2 = gscale * dx2;
      const double du1 = u1[j] - ui1;
      const double du2 = u2[j] - ui2;

      s.f1[i] += w[j] * phi * du1;
      s.f1[j] -= wi * phi * du1;
      s.f2[i] += w[j] * phi * du2;
      s.f2[j] -= wi * phi * du2;
      s.phisum[i] += w[j] * phi;
      s.phisum[j] += wi * phi;

      // (u_j - u_i)(x) g flips sign twice between the two orientations, so
      // the unweighted entries are shared
      const double t11 = du1 * g1, t12 = du1 * g2, t21 = du2 * g1, t22 = du2 * g2;
      s.q11[i] += w[j] * t11;
      s.q11[j] += wi * t11;
      s.q12[i] += w[j] * t12;
      s.q12[j] += wi * t12;
      s.q21[i] += w[j] * t21;
      s.q21[j] += wi * t21;
      s.q22[i] += w[j] * t22;
      s.q22[j] += wi * t22;

      if (need_gp) {
        s.gp1[i] += w[j] * g1;
        s.gp1[j] -= wi * g1;
        s.gp2[i] += w[j] * g2;
        s.gp2[j] -= wi * g2;
      }
    }
    s.phisum[i] += wi;  // phi(0) = 1
  }
}

void require_normalization(const PairSums2D& s) {
  for (double v : s.phisum)
    if (!(v > 0.0))
      throw std::domain_error("normalized model: interaction normalization Phi vanished");
}

struct Rates2D {
  std::vector<double> dx1, dx2, du1, du2, dm11, dm12, dm21, dm22, drho;
  // scalar-form divergence rate for the trace audit
  std::vector<double> ds;
  void resize(std::size_t n, bool audit) {
    dx1.resize(n);
    dx2.resize(n);
    du1.resize(n);
    du2.resize(n);
    dm11.resize(n);
    dm12.resize(n);
    dm21.resize(n);
    dm22.resize(n);
    drho.resize(n);
    if (audit) ds.resize(n);
  }
};

struct State2D {
  std::vector<double> x1, x2, u1, u2, m11, m12, m21, m22, rho;
};

void eval_rates_2d(const State2D& st, const std::vector<double>& w, const ModelParams& model,
                   bool audit, PairSums2D& s, Rates2D& r) {
  const std::size_t n = st.x1.size();
  const bool mt = model.model == ModelParams::Model::MT;
  pairwise_sums_2d(st.x1, st.x2, st.u1, st.u2, w, model.kernel, mt, s);
  if (mt) require_normalization(s);
  r.resize(n, audit);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = st.m11[i], b = st.m12[i], c = st.m21[i], dd = st.m22[i];
    // literal matrix square
    const double sq11 = a * a + b * c;
    const double sq12 = b * (a + dd);
    const double sq21 = c * (a + dd);
    const double sq22 = dd * dd + b * c;

    double p, q11, q12, q21, q22;
    if (mt) {
      const double inv = 1.0 / s.phisum[i];
      r.du1[i] = s.f1[i] * inv;
      r.du2[i] = s.f2[i] * inv;
      p = 1.0;
      // grad(phi/Phi) forcing: Q/Phi - (sum w phi du)(x)grad Phi / Phi^2
      q11 = s.q11[i] * inv - s.f1[i] * s.gp1[i] * inv * inv;
      q12 = s.q12[i] * inv - s.f1[i] * s.gp2[i] * inv * inv;
      q21 = s.q21[i] * inv - s.f2[i] * s.gp1[i] * inv * inv;
      q22 = s.q22[i] * inv - s.f2[i] * s.gp2[i] * inv * inv;
    } else {
      r.du1[i] = s.f1[i];
      r.du2[i] = s.f2[i];
      p = s.phisum[i];
      q11 = s.q11[i];
      q12 = s.q12[i];
      q21 = s.q21[i];
      q22 = s.q22[i];
    }
    r.dx1[i] = st.u1[i];
    r.dx2[i] = st.u2[i];
    r.dm11[i] = -sq11 - p * a + q11;
    r.dm12[i] = -sq12 - p * b + q12;
    r.dm21[i] = -sq21 - p * c + q21;
    r.dm22[i] = -sq22 - p * dd + q22;
    r.drho[i] = -st.rho[i] * (a + dd);
    if (audit) {
      // scalar reduction evaluated from the extraction at this state
      const double div = a + dd;
      const double qgap = a - dd;
      const double eta2 = qgap * qgap + 4.0 * b * c;
      r.ds[i] = -0.5 * (div * div + eta2) - p * div + (q11 + q22);
    }
  }
}

double vec_min_sum(const std::vector<double>& a, const std::vector<double>& b) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) m = std::min(m, a[i] + b[i]);
  return m;
}

bool all_finite(const std::vector<double>& v) {
  for (double a : v)
    if (!std::isfinite(a)) return false;
  return true;
}

}  // namespace

double Ensemble2D::total_mass() const { return std::accumulate(w.begin(), w.end(), 0.0); }

void Ensemble2D::momentum(double& p1, double& p2) const {
  p1 = p2 = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    p1 += w[i] * u1[i];
    p2 += w[i] * u2[i];
  }
}

double Ensemble2D::min_divergence() const { return vec_min_sum(m11, m22); }

void Ensemble2D::check_consistent() const {
  const std::size_t n = x1.size();
  if (x2.size() != n || u1.size() != n || u2.size() != n || w.size() != n || m11.size() != n ||
      m12.size() != n || m21.size() != n || m22.size() != n || rho.size() != n)
    throw std::invalid_argument("ensemble arrays must have equal length");
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] < 0.0) throw std::invalid_argument("masses must be nonnegative");
    if (rho[i] < 0.0) throw std::invalid_argument("densities must be nonnegative");
  }
}

void velocity_rhs_2d(const Ensemble2D& ens, const ModelParams& model, std::vector<double>& du1,
                     std::vector<double>& du2) {
  PairSums2D s;
  const bool mt = model.model == ModelParams::Model::MT;
  pairwise_sums_2d(ens.x1, ens.x2, ens.u1, ens.u2, ens.w, model.kernel, false, s);
  if (mt) require_normalization(s);
  du1.resize(ens.size());
  du2.resize(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const double inv = mt ? 1.0 / s.phisum[i] : 1.0;
    du1[i] = s.f1[i] * inv;
    du2[i] = s.f2[i] * inv;
  }
}

void gradient_rhs_2d(const Ensemble2D& ens, const ModelParams& model, std::vector<double>& dm11,
                     std::vector<double>& dm12, std::vector<double>& dm21,
                     std::vector<double>& dm22) {
  State2D st{ens.x1, ens.x2, ens.u1, ens.u2, ens.m11, ens.m12, ens.m21, ens.m22, ens.rho};
  PairSums2D s;
  Rates2D r;
  eval_rates_2d(st, ens.w, model, false, s, r);
  dm11 = std::move(r.dm11);
  dm12 = std::move(r.dm12);
  dm21 = std::move(r.dm21);
  dm22 = std::move(r.dm22);
}

DqrsDiagnostics dqrs_diagnostics(const Ensemble2D& ens) {
  DqrsDiagnostics out;
  const std::size_t n = ens.size();
  out.d.resize(n);
  out.q.resize(n);
  out.r.resize(n);
  out.s.resize(n);
  out.eta2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.d[i] = ens.m11[i] + ens.m22[i];
    out.q[i] = ens.m11[i] - ens.m22[i];
    out.r[i] = ens.m12[i];
    out.s[i] = ens.m21[i];
    out.eta2[i] = out.q[i] * out.q[i] + 4.0 * out.r[i] * out.s[i];
  }
  return out;
}

double Support2D::area() const {
  if (shape == Shape::Rectangle) return x1.length() * x2.length();
  const double r = 0.5 * x1.length();
  return M_PI * r * r;
}

bool Support2D::contains(double a, double b) const {
  if (shape == Shape::Rectangle)
    return a >= x1.lo && a <= x1.hi && b >= x2.lo && b <= x2.hi;
  const double r = 0.5 * x1.length();
  const double c1 = 0.5 * (x1.lo + x1.hi), c2 = 0.5 * (x2.lo + x2.hi);
  return (a - c1) * (a - c1) + (b - c2) * (b - c2) <= r * r;
}

namespace {

// Plateau band derivative: B0/2 on [center - width/2, center + width/2].
struct Band {
  double center = 0.0;
  double width = 0.0;
  double height = 0.0;

  double deriv(double x) const {
    return (x >= center - 0.5 * width && x <= center + 0.5 * width) ? height : 0.0;
  }
  // antiderivative, 0 at -inf side of the band
  double value(double x) const {
    const double lo = center - 0.5 * width, hi = center + 0.5 * width;
    if (x <= lo) return 0.0;
    if (x >= hi) return height * width;
    return height * (x - lo);
  }
};

struct Field2D {
  double half_d0 = 0.0;
  Band g;  // u1 += g(x2)
  Band h;  // u2 += h(x1)

  void eval(double a, double b, double& v1, double& v2) const {
    v1 = half_d0 * a + g.value(b);
    v2 = half_d0 * b + h.value(a);
  }
};

double sampled_diameter(const Field2D& f, const Support2D& supp, int nb = 256) {
  // image diameter over a dense boundary sample
  std::vector<double> p1, p2;
  p1.reserve(static_cast<std::size_t>(4 * nb));
  p2.reserve(static_cast<std::size_t>(4 * nb));
  auto push = [&](double a, double b) {
    double v1, v2;
    f.eval(a, b, v1, v2);
    p1.push_back(v1);
    p2.push_back(v2);
  };
  if (supp.shape == Support2D::Shape::Rectangle) {
    for (int k = 0; k <= nb; ++k) {
      const double t = static_cast<double>(k) / nb;
      push(supp.x1.lo + t * supp.x1.length(), supp.x2.lo);
      push(supp.x1.lo + t * supp.x1.length(), supp.x2.hi);
      push(supp.x1.lo, supp.x2.lo + t * supp.x2.length());
      push(supp.x1.hi, supp.x2.lo + t * supp.x2.length());
    }
  } else {
    const double r = 0.5 * supp.x1.length();
    const double c1 = 0.5 * (supp.x1.lo + supp.x1.hi), c2 = 0.5 * (supp.x2.lo + supp.x2.hi);
    for (int k = 0; k < 4 * nb; ++k) {
      const double th = 2.0 * M_PI * k / (4.0 * nb);
      push(c1 + r * std::cos(th), c2 + r * std::sin(th));
    }
  }
  double best = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i)
    for (std::size_t j = i + 1; j < p1.size(); ++j) {
      const double d1 = p1[i] - p1[j], d2 = p2[i] - p2[j];
      best = std::max(best, d1 * d1 + d2 * d2);
    }
  return std::sqrt(best);
}

}  // namespace

Ensemble2D initial_data_2d(double V0, double d0, double B0, const Support2D& support,
                           std::size_t N, double mass) {
  if (!(V0 >= 0.0) || !(B0 >= 0.0))
    throw std::invalid_argument("initial data 2d: V0, B0 must be nonnegative");
  if (!(mass > 0.0)) throw std::invalid_argument("initial data 2d: mass must be positive");
  const double L1 = support.x1.length(), L2 = support.x2.length();
  if (!(L1 > 0.0) || !(L2 > 0.0)) throw std::invalid_argument("initial data 2d: empty support");
  if (support.shape == Support2D::Shape::Disk && std::abs(L1 - L2) > 1e-12 * std::max(L1, L2))
    throw std::invalid_argument("initial data 2d: disk support needs a square bounding box");

  const double c1 = 0.5 * (support.x1.lo + support.x1.hi);
  const double c2 = 0.5 * (support.x2.lo + support.x2.hi);

  Field2D field;
  field.half_d0 = 0.5 * d0;
  field.g = Band{c2, 0.0, 0.5 * B0};
  field.h = Band{c1, 0.0, 0.5 * B0};

  // Solve the band amplitude A = (B0/2) * width so the image diameter is V0.
  const double a1 = 0.5 * std::abs(d0) * L1;
  const double a2 = 0.5 * std::abs(d0) * L2;
  double amplitude = 0.0;
  if (support.shape == Support2D::Shape::Rectangle) {
    // component ranges are (a_i + A); extremes co-attained at corners
    const double rad = 2.0 * V0 * V0 - (a1 - a2) * (a1 - a2);
    if (rad < 0.0)
      throw std::invalid_argument("initial data 2d: V0 below the affine floor of the support");
    amplitude = 0.5 * (-(a1 + a2) + std::sqrt(rad));
  } else {
    // bisection on the sampled boundary diameter
    double lo = 0.0, hi = 0.5 * B0 * std::min(L1, L2);
    field.g.width = field.h.width = 0.0;
    if (sampled_diameter(field, support) > V0 * (1.0 + 1e-9))
      throw std::invalid_argument("initial data 2d: V0 below the affine floor of the support");
    if (B0 > 0.0) {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        field.g.width = field.h.width = mid / (0.5 * B0);
        (sampled_diameter(field, support) < V0 ? lo : hi) = mid;
      }
      amplitude = 0.5 * (lo + hi);
    }
  }

  if (amplitude < -1e-12) throw std::invalid_argument("initial data 2d: infeasible V0");
  amplitude = std::max(amplitude, 0.0);
  if (B0 > 0.0) {
    const double width = amplitude / (0.5 * B0);
    if (width > std::min(L1, L2) * (1.0 + 1e-9))
      throw std::invalid_argument("initial data 2d: shear bands do not fit the support");
    if (width <= 0.0)
      throw std::invalid_argument(
          "initial data 2d: V0 leaves no room for shear bands with B0 > 0");
    field.g.width = field.h.width = width;
  } else if (amplitude > 1e-9 * (1.0 + V0)) {
    throw std::invalid_argument("initial data 2d: B0 = 0 cannot reach the requested V0");
  }

  // mass-equidistributed grid
  const auto n_axis = static_cast<std::size_t>(std::max(1.0, std::round(std::sqrt(
                          static_cast<double>(N)))));
  std::vector<double> px, py;
  for (std::size_t i = 0; i < n_axis; ++i) {
    for (std::size_t j = 0; j < n_axis; ++j) {
      const double a = support.x1.lo + (static_cast<double>(i) + 0.5) * L1 /
                                           static_cast<double>(n_axis);
      const double b = support.x2.lo + (static_cast<double>(j) + 0.5) * L2 /
                                           static_cast<double>(n_axis);
      if (support.contains(a, b)) {
        px.push_back(a);
        py.push_back(b);
      }
    }
  }
  if (px.empty()) throw std::invalid_argument("initial data 2d: no particles inside support");

  Ensemble2D ens;
  const std::size_t n = px.size();
  const double wi = mass / static_cast<double>(n);
  ens.x1 = std::move(px);
  ens.x2 = std::move(py);
  ens.w.assign(n, wi);
  ens.rho.assign(n, mass / support.area());
  ens.u1.resize(n);
  ens.u2.resize(n);
  ens.m11.resize(n);
  ens.m12.resize(n);
  ens.m21.resize(n);
  ens.m22.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    field.eval(ens.x1[i], ens.x2[i], ens.u1[i], ens.u2[i]);
    ens.m11[i] = field.half_d0;
    ens.m22[i] = field.half_d0;
    ens.m12[i] = field.g.deriv(ens.x2[i]);
    ens.m21[i] = field.h.deriv(ens.x1[i]);
  }
  return ens;
}

namespace {

struct Rk4Workspace2D {
  Rates2D k1, k2, k3, k4;
  PairSums2D sums;
  State2D stage;
};

void stage_state_2d(const Ensemble2D& base, const Rates2D& k, double h, State2D& st) {
  const std::size_t n = base.size();
  auto mix = [&](std::vector<double>& out, const std::vector<double>& b,
                 const std::vector<double>& kk) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = b[i] + h * kk[i];
  };
  mix(st.x1, base.x1, k.dx1);
  mix(st.x2, base.x2, k.dx2);
  mix(st.u1, base.u1, k.du1);
  mix(st.u2, base.u2, k.du2);
  mix(st.m11, base.m11, k.dm11);
  mix(st.m12, base.m12, k.dm12);
  mix(st.m21, base.m21, k.dm21);
  mix(st.m22, base.m22, k.dm22);
  mix(st.rho, base.rho, k.drho);
}

struct Out2D {
  std::vector<double> x1, x2, u1, u2, m11, m12, m21, m22, rho, d_audit;
};

void rk4_apply_2d(const Ensemble2D& base, const ModelParams& model, double dt, bool audit,
                  const std::vector<double>* d_audit_in, Rk4Workspace2D& ws, Out2D& out) {
  State2D st0{base.x1, base.x2, base.u1, base.u2, base.m11, base.m12, base.m21, base.m22,
              base.rho};
  eval_rates_2d(st0, base.w, model, audit, ws.sums, ws.k1);
  stage_state_2d(base, ws.k1, 0.5 * dt, ws.stage);
  eval_rates_2d(ws.stage, base.w, model, audit, ws.sums, ws.k2);
  stage_state_2d(base, ws.k2, 0.5 * dt, ws.stage);
  eval_rates_2d(ws.stage, base.w, model, audit, ws.sums, ws.k3);
  stage_state_2d(base, ws.k3, dt, ws.stage);
  eval_rates_2d(ws.stage, base.w, model, audit, ws.sums, ws.k4);

  const std::size_t n = base.size();
  const double c = dt / 6.0;
  auto combine = [&](std::vector<double>& o, const std::vector<double>& b,
                     const std::vector<double>& a1v, const std::vector<double>& a2v,
                     const std::vector<double>& a3v, const std::vector<double>& a4v) {
    o.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      o[i] = b[i] + c * (a1v[i] + 2.0 * a2v[i] + 2.0 * a3v[i] + a4v[i]);
  };
  combine(out.x1, base.x1, ws.k1.dx1, ws.k2.dx1, ws.k3.dx1, ws.k4.dx1);
  combine(out.x2, base.x2, ws.k1.dx2, ws.k2.dx2, ws.k3.dx2, ws.k4.dx2);
  combine(out.u1, base.u1, ws.k1.du1, ws.k2.du1, ws.k3.du1, ws.k4.du1);
  combine(out.u2, base.u2, ws.k1.du2, ws.k2.du2, ws.k3.du2, ws.k4.du2);
  combine(out.m11, base.m11, ws.k1.dm11, ws.k2.dm11, ws.k3.dm11, ws.k4.dm11);
  combine(out.m12, base.m12, ws.k1.dm12, ws.k2.dm12, ws.k3.dm12, ws.k4.dm12);
  combine(out.m21, base.m21, ws.k1.dm21, ws.k2.dm21, ws.k3.dm21, ws.k4.dm21);
  combine(out.m22, base.m22, ws.k1.dm22, ws.k2.dm22, ws.k3.dm22, ws.k4.dm22);
  combine(out.rho, base.rho, ws.k1.drho, ws.k2.drho, ws.k3.drho, ws.k4.drho);
  if (audit && d_audit_in) {
    out.d_audit.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      out.d_audit[i] = (*d_audit_in)[i] +
                       c * (ws.k1.ds[i] + 2.0 * ws.k2.ds[i] + 2.0 * ws.k3.ds[i] + ws.k4.ds[i]);
  }
}

}  // namespace

std::optional<BlowUpInfo> step_2d(Ensemble2D& ens, const ModelParams& model,
                                  const StepConfig& cfg, TraceAudit* audit) {
  if (!(cfg.dt_base > 0.0)) throw std::invalid_argument("step: dt_base must be positive");
  ens.check_consistent();
  const bool do_audit = audit != nullptr;
  if (do_audit && audit->d_audit.size() != ens.size()) {
    audit->d_audit.resize(ens.size());
    for (std::size_t i = 0; i < ens.size(); ++i)
      audit->d_audit[i] = ens.m11[i] + ens.m22[i];
  }

  double dt = cfg.dt_base;
  if (cfg.adaptive) {
    const double dmin = ens.min_divergence();
    dt = std::min(dt, 0.1 / std::max(1.0, std::abs(dmin)));
  }

  Rk4Workspace2D ws;
  Out2D out;
  rk4_apply_2d(ens, model, dt, do_audit, do_audit ? &audit->d_audit : nullptr, ws, out);

  if (!all_finite(out.u1) || !all_finite(out.u2) || !all_finite(out.m11) ||
      !all_finite(out.m22) || !all_finite(out.rho))
    throw NumericalFailure("non-finite state after step", ens.t);

  if (vec_min_sum(out.m11, out.m22) < -cfg.blowup_cutoff) {
    double lo = 0.0, hi = dt;
    for (int it = 0; it < 48 && (hi - lo) > 1e-15 * dt; ++it) {
      const double mid = 0.5 * (lo + hi);
      rk4_apply_2d(ens, model, mid, false, nullptr, ws, out);
      if (!all_finite(out.m11) || !all_finite(out.m22) ||
          vec_min_sum(out.m11, out.m22) < -cfg.blowup_cutoff)
        hi = mid;
      else
        lo = mid;
    }
    rk4_apply_2d(ens, model, hi, do_audit, do_audit ? &audit->d_audit : nullptr, ws, out);
    std::size_t idx = 0;
    double best = out.m11[0] + out.m22[0];
    for (std::size_t i = 1; i < out.m11.size(); ++i) {
      const double v = out.m11[i] + out.m22[i];
      if (v < best) {
        best = v;
        idx = i;
      }
    }
    ens.x1.swap(out.x1);
    ens.x2.swap(out.x2);
    ens.u1.swap(out.u1);
    ens.u2.swap(out.u2);
    ens.m11.swap(out.m11);
    ens.m12.swap(out.m12);
    ens.m21.swap(out.m21);
    ens.m22.swap(out.m22);
    ens.rho.swap(out.rho);
    if (do_audit) audit->d_audit.swap(out.d_audit);
    ens.t += hi;
    return BlowUpInfo{ens.t, idx, ens.x1[idx]};
  }

  ens.x1.swap(out.x1);
  ens.x2.swap(out.x2);
  ens.u1.swap(out.u1);
  ens.u2.swap(out.u2);
  ens.m11.swap(out.m11);
  ens.m12.swap(out.m12);
  ens.m21.swap(out.m21);
  ens.m22.swap(out.m22);
  ens.rho.swap(out.rho);
  if (do_audit) audit->d_audit.swap(out.d_audit);
  ens.t += dt;
  return std::nullopt;
}

std::optional<BlowUpInfo> step_2d(Ensemble2D& ens, const ModelParams& model,
                                  const StepConfig& cfg) {
  return step_2d(ens, model, cfg, nullptr);
}

RunOutcome2D run_2d(Ensemble2D& ens, const ModelParams& model, const RunOptions& opt,
                    const std::function<void(const Ensemble2D&)>& on_record) {
  if (!(opt.t_end >= ens.t)) throw std::invalid_argument("run: t_end must be >= current time");
  RunOutcome2D out;
  if (on_record) on_record(ens);
  long k = 0;
  bool recorded = true;
  const double t_eps = 1e-12 * std::max(1.0, opt.t_end);
  while (ens.t < opt.t_end - t_eps) {
    StepConfig cfg = opt.solver;
    cfg.dt_base = std::min(cfg.dt_base, opt.t_end - ens.t);
    const auto blow = step_2d(ens, model, cfg);
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
