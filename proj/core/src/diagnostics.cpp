#include "flockhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace flockhd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::pair<double, double> diameters(const Ensemble1D& ens) {
  double xmin = kInf, xmax = -kInf, umin = kInf, umax = -kInf;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (ens.tracer(i)) continue;
    xmin = std::min(xmin, ens.x[i]);
    xmax = std::max(xmax, ens.x[i]);
    umin = std::min(umin, ens.u[i]);
    umax = std::max(umax, ens.u[i]);
  }
  if (xmin > xmax) throw std::domain_error("diameters: no massive particles");
  return {xmax - xmin, umax - umin};
}

std::pair<double, double> diameters(const Ensemble2D& ens) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ens.size(); ++i)
    if (!ens.tracer(i)) idx.push_back(i);
  if (idx.empty()) throw std::domain_error("diameters: no massive particles");
  double S2 = 0.0, V2 = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const std::size_t i = idx[a], j = idx[b];
      const double dx1 = ens.x1[i] - ens.x1[j], dx2 = ens.x2[i] - ens.x2[j];
      const double du1 = ens.u1[i] - ens.u1[j], du2 = ens.u2[i] - ens.u2[j];
      S2 = std::max(S2, dx1 * dx1 + dx2 * dx2);
      V2 = std::max(V2, du1 * du1 + du2 * du2);
    }
  }
  return {std::sqrt(S2), std::sqrt(V2)};
}

double free_energy(const Ensemble1D& ens, const ModelParams& params) {
  const auto [S, V] = diameters(ens);
  return V + psi(params, S);
}

double free_energy(const Ensemble2D& ens, const ModelParams& params) {
  const auto [S, V] = diameters(ens);
  return V + psi(params, S);
}

std::vector<LevelDiameters> vacuum_level_diagnostics(const Ensemble1D& ens,
                                                     std::span<const double> lambdas) {
  std::vector<LevelDiameters> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) {
    if (!(lambda >= 0.0))
      throw std::invalid_argument("vacuum diagnostics: lambda must be nonnegative");
    bool seeded = lambda == 0.0;
    for (std::size_t i = 0; i < ens.size() && !seeded; ++i)
      if (ens.tracer(i) && std::abs(ens.offset[i] - lambda) <= 1e-9 * (1.0 + lambda))
        seeded = true;
    if (!seeded)
      throw std::invalid_argument("vacuum diagnostics: no tracer seeded at requested lambda");

    double mx_lo = kInf, mx_hi = -kInf, mu_lo = kInf, mu_hi = -kInf;  // massive
    double sx_lo = kInf, sx_hi = -kInf, su_lo = kInf, su_hi = -kInf;  // lambda set
    for (std::size_t i = 0; i < ens.size(); ++i) {
      const bool massive = !ens.tracer(i);
      const bool member = massive || ens.offset[i] <= lambda * (1.0 + 1e-12);
      if (massive) {
        mx_lo = std::min(mx_lo, ens.x[i]);
        mx_hi = std::max(mx_hi, ens.x[i]);
        mu_lo = std::min(mu_lo, ens.u[i]);
        mu_hi = std::max(mu_hi, ens.u[i]);
      }
      if (member) {
        sx_lo = std::min(sx_lo, ens.x[i]);
        sx_hi = std::max(sx_hi, ens.x[i]);
        su_lo = std::min(su_lo, ens.u[i]);
        su_hi = std::max(su_hi, ens.u[i]);
      }
    }
    if (mx_lo > mx_hi) throw std::domain_error("vacuum diagnostics: no massive particles");
    LevelDiameters ld;
    ld.lambda = lambda;
    ld.S = std::max(sx_hi - mx_lo, mx_hi - sx_lo);
    ld.V = std::max(su_hi - mu_lo, mu_hi - su_lo);
    out.push_back(ld);
  }
  std::sort(out.begin(), out.end(),
            [](const LevelDiameters& a, const LevelDiameters& b) { return a.lambda < b.lambda; });
  return out;
}

double level_flock_diameter(const ModelParams& params, double S0, double lambda,
                            double V_lambda0) {
  if (!(lambda >= 0.0) || !(V_lambda0 >= 0.0))
    throw std::domain_error("level_flock_diameter: lambda, V_lambda0 must be nonnegative");
  return psi_inverse(params, V_lambda0 + psi(params, S0 + lambda));
}

DiagnosticsRecord make_record(const Ensemble1D& ens, const ModelParams& params,
                              std::span<const double> lambdas) {
  DiagnosticsRecord rec;
  rec.t = ens.t;
  const auto [S, V] = diameters(ens);
  rec.S = S;
  rec.V = V;
  rec.mass = ens.total_mass();
  rec.momentum1 = ens.momentum();
  rec.grad_min = ens.min_slope();
  rec.energy = V + psi(params, S);
  if (!lambdas.empty()) {
    for (const LevelDiameters& ld : vacuum_level_diagnostics(ens, lambdas)) {
      rec.v_lambda.emplace_back(ld.lambda, ld.V);
      rec.s_lambda.emplace_back(ld.lambda, ld.S);
    }
  }
  return rec;
}

DiagnosticsRecord make_record(const Ensemble2D& ens, const ModelParams& params) {
  DiagnosticsRecord rec;
  rec.t = ens.t;
  const auto [S, V] = diameters(ens);
  rec.S = S;
  rec.V = V;
  rec.mass = ens.total_mass();
  ens.momentum(rec.momentum1, rec.momentum2);
  rec.grad_min = ens.min_divergence();
  rec.energy = V + psi(params, S);
  return rec;
}

FlockingReport flocking_check(const std::vector<DiagnosticsRecord>& records,
                              const ModelParams& params, double D, std::size_t N, double tol) {
  if (records.empty()) throw std::invalid_argument("flocking_check: no records");
  FlockingReport rep;
  rep.D = D;
  rep.V0 = records.front().V;
  const double m = params.interaction_bound();
  rep.guaranteed_rate = m * params.kernel(D);
  const double allowance = 1.0 + tol + 5.0 / static_cast<double>(N);
  const double t0 = records.front().t;

  char msg[160];
  for (const DiagnosticsRecord& r : records) {
    const double dia_ratio = r.S / (D * allowance);
    rep.worst_diameter_ratio = std::max(rep.worst_diameter_ratio, dia_ratio);
    if (dia_ratio > 1.0) {
      std::snprintf(msg, sizeof msg, "t=%.6g: S=%.9g exceeds D=%.9g allowance", r.t, r.S, D);
      rep.violations.emplace_back(msg);
    }
    const double bound = rep.V0 * std::exp(-rep.guaranteed_rate * (r.t - t0)) * allowance;
    if (rep.V0 > 0.0) {
      const double decay_ratio = bound > 0.0 ? r.V / bound : (r.V > 0.0 ? kInf : 0.0);
      rep.worst_decay_ratio = std::max(rep.worst_decay_ratio, decay_ratio);
      if (decay_ratio > 1.0) {
        std::snprintf(msg, sizeof msg, "t=%.6g: V=%.9g exceeds decay bound %.9g", r.t, r.V,
                      bound);
        rep.violations.emplace_back(msg);
      }
    } else if (r.V > allowance - 1.0) {
      std::snprintf(msg, sizeof msg, "t=%.6g: V=%.9g with V0=0", r.t, r.V);
      rep.violations.emplace_back(msg);
    }
  }
  rep.diameter_ok = rep.worst_diameter_ratio <= 1.0;
  rep.decay_ok = rep.worst_decay_ratio <= 1.0 &&
                 (rep.V0 > 0.0 || rep.violations.empty());

  // least-squares exponent of log V over the usable range
  if (rep.V0 > 0.0) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (const DiagnosticsRecord& r : records) {
      if (!(r.V > rep.V0 * 1e-13)) continue;
      const double lx = r.t - t0, ly = std::log(r.V);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
    if (n >= 3 && sxx * static_cast<double>(n) - sx * sx > 0.0) {
      rep.fitted_rate =
          (static_cast<double>(n) * sxy - sx * sy) / (static_cast<double>(n) * sxx - sx * sx);
      rep.rate_ok = rep.fitted_rate <= -rep.guaranteed_rate * 0.9;
    } else {
      rep.rate_ok = true;  // too little signal to fit (near-instant decay)
      rep.fitted_rate = 0.0;
    }
    if (!rep.rate_ok) {
      std::snprintf(msg, sizeof msg, "fitted decay rate %.6g slower than 0.9 * %.6g",
                    rep.fitted_rate, rep.guaranteed_rate);
      rep.violations.emplace_back(msg);
    }
  } else {
    rep.rate_ok = true;
  }
  return rep;
}

}  // namespace flockhd
