#pragma once

#include <cstddef>
#include <vector>

#include "flockhd/curves.hpp"
#include "flockhd/rng.hpp"

namespace flockhd {

// Piecewise-constant signal on a uniform time lattice (admissible coefficient
// paths for the majorant systems).
struct PiecewiseSignal {
  double dt = 0.25;
  std::vector<double> values;

  double operator()(double t) const;
};

PiecewiseSignal random_signal(Rng& rng, double lo, double hi, double horizon, double dt = 0.25);

// Ordering cases between the inequality system
//   d' = -d^2 - p d + q V,  dV/dt = -vrate V   (p in [gamma,Gamma], |q| <= C,
//                                               vrate >= G)
// and the equality system
//   w' = -w^2 - E w + F eta,  eta' = -G eta,
// with (E, F) fixed per case:
//   C1a: E=gamma, F=+C, valid while w >= 0, concludes d <= w, V <= eta
//   C1b: E=Gamma, F=-C, valid while w >= 0, concludes d >= w, V <= eta
//   C2a: E=Gamma, F=+C, valid while w <= 0, concludes d <= w, V <= eta
//   C2b: E=gamma, F=-C, valid while w <= 0, concludes d >= w, V <= eta
enum class CompareCase { C1a, C1b, C2a, C2b };

enum class TrialOutcome {
  Held,      // ordering conclusion held at every output time
  Violated,  // ordering broke while the sign condition was still valid
  Discarded  // sign condition expired mid-run before the horizon
};

struct ComparisonTrial {
  PiecewiseSignal p;      // in [gamma, Gamma]
  PiecewiseSignal q;      // in [-C, C]
  PiecewiseSignal vrate;  // >= G
  double d0 = 0.0;
  double V0 = 0.0;
  double omega0 = 0.0;
  double eta0 = 0.0;
  double horizon = 8.0;
};

ComparisonTrial make_comparison_trial(const MajorantParams& mp, CompareCase c, Rng& rng);

// Integrates both systems side by side (same RK4 lattice) and checks the
// ordering conclusion of the case at every step, within tol*(1+|d|+|w|).
TrialOutcome comparison_harness(const MajorantParams& mp, CompareCase c,
                                const ComparisonTrial& trial, double tol = 1e-9);

// One randomized trial of the (q, r, s) bound: forcing Q_ij V(t) with
// |Q_ij| <= C and V0 <= 1, divergence path clamped to the floor
// -gamma + 2 C / B. Reports the worst max{|q|, 2|r|, 2|s|} / B seen.
struct GapTrialResult {
  bool bound_held = false;
  double worst_ratio = 0.0;
};

GapTrialResult spectral_gap_trial(const MajorantParams& mp, double B, Rng& rng,
                                  double horizon = 10.0, double tol = 1e-9);

// Fate of the saddle flow w' = -w^2 - E w + F eta, eta' = -G eta started at
// (eta0, w0): true when (w, eta) -> (0, 0), false when w escapes to -1e6.
bool saddle_flow_converges(double E, double F, double G, double w0, double eta0);

// Basin boundary w*(eta0) of the saddle flow by bisection on the fate,
// bracketing around the hint (typically the integrated separatrix value).
// The forward-x curve integration is ill-conditioned where the separatrix
// steepens, so classification queries should go through this refinement.
double separatrix_boundary(double E, double F, double G, double eta0, double hint);

// Separatrix classification: integrate the equality system from
// (eta0, f(eta0) +- offset) and require convergence above / divergence to
// -1e6 below. f(eta0) is the flow-refined boundary.
struct SeparatrixTrialResult {
  bool curve_usable = false;  // curve reached eta0 without truncation
  bool converged_above = false;
  bool diverged_below = false;
};

SeparatrixTrialResult separatrix_trial(double E, double F, double G, double eta0,
                                       double offset = 0.1);

// Adversarial integration check of riccati_classify: BoundedForAll instances
// must survive constant (p, Q) = (gamma, -c); BlowUp instances must diverge
// under (Gamma, +c). Indeterminate instances are vacuously true.
bool riccati_adversarial_check(double gamma, double Gamma, double c, double d0);

// Blow-up time of d' = -d^2 - Gamma d + q0 from d0 below the lower root,
// closed form via partial fractions. +inf if d0 is not below the lower root.
double riccati_blowup_time(double Gamma, double q0, double d0);

}  // namespace flockhd
