#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flockhd/majorant.hpp"

namespace flockhd {

enum class CurveKind { SigmaPlus1D, SigmaMinus1D, Zeta2D, H2D, SeparatrixF, MTSigma };

const char* curve_kind_name(CurveKind k);

// Monotone sampled threshold curve x -> value on a geometric grid with an
// exact anchor at x = 0. Evaluation between nodes is piecewise linear;
// classification against the curve should leave the conservative margin()
// around the interpolant.
struct ThresholdCurve {
  std::vector<double> xs;      // xs[0] == 0
  std::vector<double> values;  // values[0] == anchor
  CurveKind kind = CurveKind::SeparatrixF;
  MajorantParams params;
  std::optional<GapParams> gap;
  bool truncated = false;  // integration stopped before the requested x_max

  double anchor() const { return values.front(); }
  double x_end() const { return xs.back(); }

  // Linear interpolation. Throws std::domain_error outside [0, x_end()].
  double eval(double x) const;

  // Local node gap times the local slope bound: interpolation error budget
  // used to keep classifications conservative near the curve.
  double margin(double x) const;
};

// Thrown when the adaptive integrator rejects steps down to the minimum step
// size; carries the portion of the curve integrated so far.
struct StiffCurveError : std::runtime_error {
  StiffCurveError(std::string msg, ThresholdCurve curve)
      : std::runtime_error(std::move(msg)), partial(std::move(curve)) {}
  ThresholdCurve partial;
};

inline constexpr int kCurveNodes = 512;
inline constexpr double kCurveOriginEps = 1e-6;

// Separatrix through (0, -E) of
//   w' = -w^2 - E w + F eta,  eta' = -G eta:
// f(0) = -E, f'(0) = -F/(E+G), f'(x) = (-f^2 - E f + F x)/(-G x) for x > 0.
ThresholdCurve integrate_separatrix(double E, double F, double G, double x_max,
                                    int nodes = kCurveNodes);

// Upper threshold of the scalar fast-alignment majorant: anchor -gamma,
// limit slope C/(gamma+G), coefficient gamma while the value is negative and
// Gamma once it is nonnegative (kink at the switch).
ThresholdCurve sigma_plus_1d(const MajorantParams& mp, double x_max, int nodes = kCurveNodes);

// Lower threshold: anchor -Gamma, limit slope -C/(Gamma+G), single branch.
ThresholdCurve sigma_minus_1d(const MajorantParams& mp, double x_max, int nodes = kCurveNodes);

// sigma_plus for normalized-model constants (gamma = Gamma = 1), tagged
// MTSigma; anchor is -1.
ThresholdCurve mt_sigma_curve(const MajorantParams& mp, double x_max, int nodes = kCurveNodes);

// Divergence threshold keeping d >= -gamma + delta in 2D: flat at
// -gamma + delta on [0, (gamma^2 - delta^2 - 2B^2)/(4C)), then
//   h' = (h^2 + 2 p h + 4 C x + 2 B^2) / (2 G x),
// with p = gamma while h < 0 and Gamma once h >= 0.
// Requires B <= gamma/sqrt(2) and delta in (0, sqrt(gamma^2 - 2 B^2)].
ThresholdCurve h_curve_2d(const MajorantParams& mp, const GapParams& gp, double x_max,
                          int nodes = kCurveNodes);

// Sampled zeta over its closed-form domain (truncated at the domain end if
// x_max exceeds it).
ThresholdCurve zeta_curve(const MajorantParams& mp, const GapParams& gp, double x_max,
                          int nodes = kCurveNodes);

// Classification of a point against upper/lower curves with the conservative
// interpolation margin; x beyond a truncated curve is treated as undecidable.
ThresholdClass classify_against_curves(const ThresholdCurve& upper, const ThresholdCurve& lower,
                                       double V0, double d0);

}  // namespace flockhd
