#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flockhd/curves.hpp"
#include "flockhd/diagnostics.hpp"

namespace flockhd {

enum class Outcome { GloballyRegular, BlowUp, Undecided };

const char* outcome_name(Outcome o);
const char* threshold_class_name(ThresholdClass c);

struct SweepConfig {
  ModelParams model;
  int dimension = 1;
  std::vector<double> V0_grid;
  std::vector<double> d0_grid;
  std::vector<double> B0_grid;  // 2D only; empty means {0}
  double horizon_cap = 0.0;     // 0 = uncapped; per-point horizon is 50/(m phi(D))
  StepConfig solver{0.02, 1e6, true};
  std::size_t N = 48;
  Profile1D profile = Profile1D::NShape;
  Interval support{-0.5, 0.5};
  Support2D support2d{};
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct PhasePoint {
  double V0 = 0.0, d0 = 0.0, B0 = 0.0;
  Outcome outcome = Outcome::Undecided;
  double t_out = 0.0;  // blow-up time, certificate time, or horizon
  ThresholdClass predicted_closed = ThresholdClass::Indeterminate;
  ThresholdClass predicted_fast = ThresholdClass::Indeterminate;
  std::string note;  // reason when Undecided
};

struct SweepSummary {
  std::size_t points = 0;
  std::size_t regular = 0;
  std::size_t blowup = 0;
  std::size_t undecided = 0;
  std::size_t undecided_infeasible = 0;  // construction refused at this N
  std::size_t undecided_horizon = 0;     // ran out of horizon without a certificate
  // soundness: a point predicted subcritical (by either variant) must not
  // blow up; a predicted supercritical point must not survive
  std::size_t subcritical_predicted_blowups = 0;
  std::size_t supercritical_predicted_survivors = 0;
  // containment of the closed-form subcritical region in the fast-alignment
  // region, and how many points only the fast curves certify
  bool closed_subset_of_fast = true;
  std::size_t fast_only_subcritical = 0;
};

// Builds initial data for one grid point, runs it to blow-up, to a rigorous
// regularity certificate, or to the horizon, and attaches both threshold
// predictions. Infeasible construction is recorded as Undecided with the
// reason, never thrown.
PhasePoint classify_point(const SweepConfig& cfg, double V0, double d0, double B0 = 0.0);

// Full grid, parallel across points; deterministic per point.
std::vector<PhasePoint> phase_diagram(const SweepConfig& cfg, SweepSummary* summary = nullptr);

SweepSummary summarize(const std::vector<PhasePoint>& points);

}  // namespace flockhd
