#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flockhd {

// Every tolerance of the property suite, config-overridable.
struct ValidateOptions {
  std::uint64_t seed = 20260811;
  int comparison_trials = 1000;  // per case
  int separatrix_trials = 50;
  int gap_trials = 200;
  int riccati_trials = 500;
  int zeta_checks = 100;
  int flow_checks = 20;  // h-curve orientation flow probes

  double ordering_tol = 1e-9;
  double gap_tol = 1e-9;
  double zeta_tol = 1e-10;
  double slope_tol = 1e-2;        // curve limit-slope agreement
  double energy_tol = 1e-8;       // free-energy monotonicity per step
  double momentum_tol = 1e-8;     // relative drift
  double max_principle_tol = 1e-9;  // per unit time

  std::size_t run_N = 80;
  double run_t_end = 6.0;
  double run_dt = 1e-3;
};

struct ValidateItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidateReport {
  std::vector<ValidateItem> items;
  std::vector<std::string> notes;

  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
};

// Randomized property suite: comparison principle (four cases), separatrix
// classification and anchors, spectral-gap bound, Riccati agreement with
// adversarial integration, zeta continuity, curve anchors, h-curve flow
// orientation, conservation, maximum principle, free energy, and the flocking
// decay bounds.
ValidateReport run_validation(const ValidateOptions& opt);

}  // namespace flockhd
