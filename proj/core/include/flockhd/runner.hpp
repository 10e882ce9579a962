#pragma once

#include <optional>
#include <ostream>

#include "flockhd/io.hpp"

namespace flockhd {

struct SimulateResult {
  std::optional<BlowUpInfo> blowup;
  std::vector<DiagnosticsRecord> records;
  std::vector<double> tracer_lambdas;
  double flock_D = 0.0;  // flocking diameter of the initial data
  std::size_t particles = 0;
};

// Builds the initial data of the spec, runs it to t_end or blow-up, and
// streams trajectory rows / diagnostics rows to the given sinks (either may
// be null). Records are kept in the result for further checks.
SimulateResult run_simulate(const ModelParams& model, const SimulateSpec& spec,
                            std::ostream* trajectory, std::ostream* diagnostics);

}  // namespace flockhd
