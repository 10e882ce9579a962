#include <doctest.h>

#include <cmath>
#include <sstream>

#include "flockhd/io.hpp"
#include "flockhd/sweep.hpp"

using namespace flockhd;

namespace {

SweepConfig base_config() {
  SweepConfig cfg;
  cfg.model = make_model(ModelParams::Model::CS, 1.0, InfluenceKernel::power_law(0.5));
  cfg.dimension = 1;
  cfg.N = 40;
  cfg.solver.dt_base = 0.02;
  cfg.support = {-0.5, 0.5};
  cfg.threads = 2;
  return cfg;
}

}  // namespace

TEST_CASE("equilibrium point is regular and predicted subcritical") {
  const SweepConfig cfg = base_config();
  const PhasePoint pt = classify_point(cfg, 0.0, 0.0);
  CHECK(pt.outcome == Outcome::GloballyRegular);
  CHECK(pt.predicted_closed == ThresholdClass::Subcritical);
  CHECK(pt.predicted_fast == ThresholdClass::Subcritical);
}

TEST_CASE("deep supercritical point blows up as predicted") {
  const SweepConfig cfg = base_config();
  const PhasePoint pt = classify_point(cfg, 0.4, -2.2);
  CHECK(pt.predicted_closed == ThresholdClass::Supercritical);
  CHECK(pt.predicted_fast == ThresholdClass::Supercritical);
  CHECK(pt.outcome == Outcome::BlowUp);
  CHECK(pt.t_out > 0.0);
}

TEST_CASE("point above the fast curve is regular") {
  const SweepConfig cfg = base_config();
  // V0 beyond the closed-form diameter budget: only the fast curve certifies
  const PhasePoint pt = classify_point(cfg, 0.6, 0.0);
  CHECK(pt.predicted_closed != ThresholdClass::Subcritical);
  CHECK(pt.predicted_fast == ThresholdClass::Subcritical);
  CHECK(pt.outcome == Outcome::GloballyRegular);
}

TEST_CASE("infeasible construction is recorded, not thrown") {
  const SweepConfig cfg = base_config();
  const PhasePoint pt = classify_point(cfg, 0.8, -0.1);  // descent cannot fit
  CHECK(pt.outcome == Outcome::Undecided);
  CHECK(!pt.note.empty());
}

TEST_CASE("small grid: soundness and containment") {
  SweepConfig cfg = base_config();
  cfg.V0_grid = {0.05, 0.2, 0.45, 0.7};
  cfg.d0_grid = {-1.8, -1.1, -0.45, 0.0};
  SweepSummary summary;
  const std::vector<PhasePoint> pts = phase_diagram(cfg, &summary);
  CHECK(pts.size() == 16);
  CHECK(summary.points == 16);
  CHECK(summary.subcritical_predicted_blowups == 0);
  CHECK(summary.supercritical_predicted_survivors == 0);
  CHECK(summary.closed_subset_of_fast);
  CHECK(summary.regular + summary.blowup + summary.undecided == 16);
}

TEST_CASE("empty grid gives an empty table") {
  SweepConfig cfg = base_config();
  cfg.V0_grid = {};
  cfg.d0_grid = {0.0};
  SweepSummary summary;
  CHECK(phase_diagram(cfg, &summary).empty());
  CHECK(summary.points == 0);
}

TEST_CASE("sweep output is deterministic") {
  SweepConfig cfg = base_config();
  cfg.V0_grid = {0.1, 0.3};
  cfg.d0_grid = {-1.5, -0.2};
  const std::vector<PhasePoint> a = phase_diagram(cfg);
  const std::vector<PhasePoint> b = phase_diagram(cfg);
  std::ostringstream sa, sb;
  write_sweep_csv(sa, a);
  write_sweep_csv(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("V0,d0,B0,outcome,T_c,predicted_closed,predicted_fast\n", 0) == 0);
}

TEST_CASE("sweep config validation") {
  SweepConfig cfg = base_config();
  cfg.d0_grid = {0.0, -1.0};  // unsorted
  cfg.V0_grid = {0.1};
  CHECK_THROWS_AS(phase_diagram(cfg), std::invalid_argument);
  cfg.d0_grid = {0.0};
  cfg.dimension = 3;
  CHECK_THROWS_AS(phase_diagram(cfg), std::invalid_argument);
}

TEST_CASE("normalized-model sweep is sound too") {
  SweepConfig cfg = base_config();
  cfg.model = make_model(ModelParams::Model::MT, 1.0, InfluenceKernel::power_law(0.5));
  cfg.V0_grid = {0.05, 0.25, 0.5};
  cfg.d0_grid = {-2.6, -1.4, -0.6, 0.0};
  SweepSummary summary;
  const std::vector<PhasePoint> pts = phase_diagram(cfg, &summary);
  CHECK(pts.size() == 12);
  CHECK(summary.subcritical_predicted_blowups == 0);
  CHECK(summary.supercritical_predicted_survivors == 0);
  CHECK(summary.closed_subset_of_fast);
  CHECK(summary.blowup > 0);
  CHECK(summary.regular > 0);
}

TEST_CASE("2d point classification attaches both predictions") {
  SweepConfig cfg = base_config();
  cfg.dimension = 2;
  cfg.N = 100;
  cfg.support2d.x1 = {-0.5, 0.5};
  cfg.support2d.x2 = {-0.5, 0.5};
  cfg.horizon_cap = 30.0;
  const double d0 = -0.08, B0 = 0.03;
  const double V0 = 0.5 * 0.08 * std::sqrt(2.0) + 0.01;
  const PhasePoint pt = classify_point(cfg, V0, d0, B0);
  CHECK(pt.predicted_closed == ThresholdClass::Subcritical);
  CHECK(pt.outcome == Outcome::GloballyRegular);
}
