#include "flockhd/runner.hpp"

#include <algorithm>

namespace flockhd {

namespace {

SimulateResult run_simulate_1d(const ModelParams& model, const SimulateSpec& spec,
                               std::ostream* trajectory, std::ostream* diagnostics) {
  SimulateResult result;
  Ensemble1D ens;
  VelocityProfile1D profile =
      VelocityProfile1D::piecewise_linear({0.0, 1.0}, {0.0, 0.0});
  if (spec.profile == "two_blob") {
    ens = two_blob_data_1d(spec.two_blob, spec.N, model.mass);
    profile = two_blob_profile(spec.two_blob);
  } else {
    const Profile1D kind = spec.profile == "sine" ? Profile1D::Sine : Profile1D::NShape;
    ens = initial_data_1d(spec.V0, spec.d0, spec.support, kind, spec.N, model.mass);
    profile = build_profile_1d(spec.V0, spec.d0, spec.support, kind);
  }
  if (!spec.tracers.empty()) seed_tracers(ens, spec.tracers, profile);
  result.tracer_lambdas = spec.tracers;
  std::sort(result.tracer_lambdas.begin(), result.tracer_lambdas.end());
  result.particles = ens.size();

  const auto [S0, V0] = diameters(ens);
  result.flock_D = flock_diameter(model, S0, V0);

  if (trajectory) write_trajectory_header_1d(*trajectory);
  RunOptions opt;
  opt.solver = spec.solver;
  opt.t_end = spec.t_end;
  opt.record_every = std::max(spec.output_every, 1);
  const RunOutcome1D out = run_1d(ens, model, opt, [&](const Ensemble1D& e) {
    result.records.push_back(make_record(e, model, result.tracer_lambdas));
    if (trajectory) write_trajectory_rows_1d(*trajectory, e);
  });
  result.blowup = out.blowup;
  if (diagnostics) write_diagnostics_csv(*diagnostics, result.records, result.tracer_lambdas);
  return result;
}

SimulateResult run_simulate_2d(const ModelParams& model, const SimulateSpec& spec,
                               std::ostream* trajectory, std::ostream* diagnostics) {
  SimulateResult result;
  Ensemble2D ens =
      initial_data_2d(spec.V0, spec.d0, spec.B0, spec.support2d, spec.N, model.mass);
  result.particles = ens.size();
  const auto [S0, V0] = diameters(ens);
  result.flock_D = flock_diameter(model, S0, V0);

  if (trajectory) write_trajectory_header_2d(*trajectory);
  RunOptions opt;
  opt.solver = spec.solver;
  opt.t_end = spec.t_end;
  opt.record_every = std::max(spec.output_every, 1);
  const RunOutcome2D out = run_2d(ens, model, opt, [&](const Ensemble2D& e) {
    result.records.push_back(make_record(e, model));
    if (trajectory) write_trajectory_rows_2d(*trajectory, e);
  });
  result.blowup = out.blowup;
  if (diagnostics) write_diagnostics_csv(*diagnostics, result.records, {});
  return result;
}

}  // namespace

SimulateResult run_simulate(const ModelParams& model, const SimulateSpec& spec,
                            std::ostream* trajectory, std::ostream* diagnostics) {
  if (spec.dimension == 2) return run_simulate_2d(model, spec, trajectory, diagnostics);
  return run_simulate_1d(model, spec, trajectory, diagnostics);
}

}  // namespace flockhd
