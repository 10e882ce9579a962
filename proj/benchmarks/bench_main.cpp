// Microbenchmarks for the O(N^2) interaction loops, the steppers, and the
// threshold-curve integration.

#include <benchmark/benchmark.h>

#include "flockhd/curves.hpp"
#include "flockhd/dynamics1d.hpp"
#include "flockhd/dynamics2d.hpp"

using namespace flockhd;

namespace {

const ModelParams kCS = make_model(ModelParams::Model::CS, 1.0,
                                   InfluenceKernel::power_law(0.5));
const ModelParams kMT = make_model(ModelParams::Model::MT, 1.0,
                                   InfluenceKernel::power_law(0.5));

Ensemble1D make_1d(std::size_t n) {
  return initial_data_1d(0.4, -0.8, Interval{-0.5, 0.5}, Profile1D::Sine, n);
}

Ensemble2D make_2d(std::size_t n_axis) {
  Support2D supp;
  supp.x1 = {-0.5, 0.5};
  supp.x2 = {-0.5, 0.5};
  const double V0 = 0.5 * 0.3 * std::sqrt(2.0);
  return initial_data_2d(V0, -0.3, 0.0, supp, n_axis * n_axis);
}

void BM_VelocityRhs1D(benchmark::State& state) {
  const Ensemble1D ens = make_1d(static_cast<std::size_t>(state.range(0)));
  std::vector<double> du;
  for (auto _ : state) {
    velocity_rhs(ens, kCS, du);
    benchmark::DoNotOptimize(du.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VelocityRhs1D)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_VelocityRhs1D_MT(benchmark::State& state) {
  const Ensemble1D ens = make_1d(static_cast<std::size_t>(state.range(0)));
  std::vector<double> du;
  for (auto _ : state) {
    velocity_rhs(ens, kMT, du);
    benchmark::DoNotOptimize(du.data());
  }
}
BENCHMARK(BM_VelocityRhs1D_MT)->Arg(256);

void BM_Step1D(benchmark::State& state) {
  Ensemble1D ens = make_1d(static_cast<std::size_t>(state.range(0)));
  StepConfig cfg;
  cfg.dt_base = 1e-4;  // keep the state near the initial data across iterations
  for (auto _ : state) {
    step(ens, kCS, cfg);
    benchmark::DoNotOptimize(ens.x.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Step1D)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_Step2D(benchmark::State& state) {
  Ensemble2D ens = make_2d(static_cast<std::size_t>(state.range(0)));
  StepConfig cfg;
  cfg.dt_base = 1e-4;
  for (auto _ : state) {
    step_2d(ens, kCS, cfg);
    benchmark::DoNotOptimize(ens.x1.data());
  }
}
BENCHMARK(BM_Step2D)->Arg(12)->Arg(24);

void BM_SigmaPlusCurve(benchmark::State& state) {
  const MajorantParams mp{0.5, 1.0, 0.5, 0.5};
  for (auto _ : state) {
    const ThresholdCurve c = sigma_plus_1d(mp, 1.0);
    benchmark::DoNotOptimize(c.values.data());
  }
}
BENCHMARK(BM_SigmaPlusCurve);

void BM_Diameters2D(benchmark::State& state) {
  const Ensemble2D ens = make_2d(24);
  for (auto _ : state) {
    double p1, p2;
    ens.momentum(p1, p2);
    benchmark::DoNotOptimize(p1);
  }
}
BENCHMARK(BM_Diameters2D);

}  // namespace

BENCHMARK_MAIN();
