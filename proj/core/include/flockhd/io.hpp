#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "flockhd/curves.hpp"
#include "flockhd/diagnostics.hpp"
#include "flockhd/sweep.hpp"
#include "flockhd/validate.hpp"

namespace flockhd {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed `%.17g` rendering; output files are byte-stable across reruns.
std::string fmt_double(double v);

// header: x,value,kind,gamma,Gamma,C,G[,delta,B]
void write_curve_csv(std::ostream& os, const ThresholdCurve& curve);

// rows: t,i,x,u,e,rho,w
void write_trajectory_header_1d(std::ostream& os);
void write_trajectory_rows_1d(std::ostream& os, const Ensemble1D& ens);

// rows: t,i,x1,x2,u1,u2,M11,M12,M21,M22,rho,w
void write_trajectory_header_2d(std::ostream& os);
void write_trajectory_rows_2d(std::ostream& os, const Ensemble2D& ens);

// one row per record; V^lambda / S^lambda columns appended per tracer level
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records,
                           std::span<const double> lambdas);

// rows: V0,d0,B0,outcome,T_c,predicted_closed,predicted_fast
void write_sweep_csv(std::ostream& os, const std::vector<PhasePoint>& points);

std::string sweep_summary_json(const SweepSummary& summary);
std::string validate_report_json(const ValidateReport& report);
std::string flocking_report_json(const FlockingReport& report);

// ---- run configuration ----------------------------------------------------

struct SimulateSpec {
  int dimension = 1;
  std::string profile = "nshape";  // nshape | sine | two_blob | linear_shear
  double V0 = 0.1;
  double d0 = -0.3;
  double B0 = 0.0;
  Interval support{-0.5, 0.5};
  Support2D support2d{};
  TwoBlobSpec two_blob{};
  std::size_t N = 200;
  std::vector<double> tracers;
  double t_end = 10.0;
  StepConfig solver{};
  int output_every = 10;
};

struct ThresholdsSpec {
  std::vector<std::string> curves{"sigma_plus", "sigma_minus", "separatrix", "zeta", "h",
                                  "mt_sigma"};
  double x_max = 2.0;
  std::optional<MajorantParams> params;  // explicit constants win
  std::optional<double> D;               // else derived from the model at D
  std::optional<double> S0, V0;          // else D from flock_diameter(S0, V0)
  GapParams gap{0.4, 0.3};
  double E = 1.0, F = 1.0;  // separatrix coefficients (G comes from params.G)
};

struct RunSpec {
  ModelParams model;
  std::uint64_t seed = 1;
  std::optional<SimulateSpec> simulate;
  std::optional<ThresholdsSpec> thresholds;
  std::optional<SweepConfig> sweep;
  std::optional<ValidateOptions> validate;
};

// Parses the JSON run configuration; errors carry the file, the JSON path of
// the offending key, and parser line/column information.
RunSpec parse_config_file(const std::string& path);
RunSpec parse_config_text(const std::string& text, const std::string& origin = "<config>");

}  // namespace flockhd
