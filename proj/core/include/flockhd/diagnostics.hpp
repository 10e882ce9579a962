#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flockhd/dynamics1d.hpp"
#include "flockhd/dynamics2d.hpp"
#include "flockhd/kernels.hpp"

namespace flockhd {

struct DiagnosticsRecord {
  double t = 0.0;
  double S = 0.0;  // support diameter over massive particles
  double V = 0.0;  // velocity diameter over massive particles
  double mass = 0.0;
  double momentum1 = 0.0;
  double momentum2 = 0.0;  // second component, 2D only
  double grad_min = 0.0;   // min e (1D) or min div (2D), all characteristics
  double energy = 0.0;     // free energy V + psi(S)
  // level-set diameters keyed by tracer offset, sorted by lambda
  std::vector<std::pair<double, double>> v_lambda;
  std::vector<std::pair<double, double>> s_lambda;
};

// Exact max over massive pairs. Throws std::domain_error on an ensemble with
// no massive particles.
std::pair<double, double> diameters(const Ensemble1D& ens);
std::pair<double, double> diameters(const Ensemble2D& ens);

// V + psi(S).
double free_energy(const Ensemble1D& ens, const ModelParams& params);
double free_energy(const Ensemble2D& ens, const ModelParams& params);

struct LevelDiameters {
  double lambda = 0.0;
  double S = 0.0;  // sup distance between the lambda-set and the support
  double V = 0.0;
};

// Diameters between the lambda-offset characteristics (tracers seeded at
// offsets <= lambda plus every massive particle) and the massive support.
// Throws std::invalid_argument when no tracer was seeded at a requested
// lambda.
std::vector<LevelDiameters> vacuum_level_diagnostics(const Ensemble1D& ens,
                                                     std::span<const double> lambdas);

DiagnosticsRecord make_record(const Ensemble1D& ens, const ModelParams& params,
                              std::span<const double> lambdas = {});

// A priori bound on S^lambda: psi^{-1}(V^lambda(0) + psi(S0 + lambda)).
double level_flock_diameter(const ModelParams& params, double S0, double lambda,
                            double V_lambda0);
DiagnosticsRecord make_record(const Ensemble2D& ens, const ModelParams& params);

struct FlockingReport {
  double D = 0.0;
  double V0 = 0.0;
  double guaranteed_rate = 0.0;  // m phi(D)
  double fitted_rate = 0.0;      // least-squares slope of log V(t)
  double worst_diameter_ratio = 0.0;
  double worst_decay_ratio = 0.0;
  bool diameter_ok = false;
  bool decay_ok = false;
  bool rate_ok = false;
  std::vector<std::string> violations;

  bool pass() const { return diameter_ok && decay_ok && rate_ok; }
};

// Verifies S(t) <= D (1+tol') and V(t) <= V0 exp(-m phi(D) t)(1+tol') for all
// records, tol' = tol + 5/N, and fits the empirical decay exponent of V by
// least squares on log V (requiring it to be at least 90% of the guaranteed
// rate). Violations are listed, not thrown.
FlockingReport flocking_check(const std::vector<DiagnosticsRecord>& records,
                              const ModelParams& params, double D, std::size_t N,
                              double tol = 1e-6);

}  // namespace flockhd
