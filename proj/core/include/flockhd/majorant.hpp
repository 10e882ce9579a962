#pragma once

#include <optional>

#include "flockhd/kernels.hpp"

namespace flockhd {

// Coefficient bounds of the majorant gradient dynamics
//   M' = -M^2 - p M + Q V,   p in [gamma, Gamma], |Q_ij| <= C,  dV/dt <= -G V.
struct MajorantParams {
  double gamma = 1.0;  // lower bound on the alignment strength p
  double Gamma = 1.0;  // upper bound on p
  double C = 0.0;      // bound on the forcing entries
  double G = 1.0;      // guaranteed exponential decay rate of V

  void validate() const;
};

// Off-trace budget for the 2D gradient: B bounds max{|q|, 2|r|, 2|s|} and
// delta is the slack kept between the divergence and -gamma.
struct GapParams {
  double delta = 0.5;
  double B = 0.5;
};

enum class RiccatiClass { BoundedForAll, BlowUp, Indeterminate };

// Classification of d' = -d^2 - p d + Q with p in [gamma,Gamma], |Q| <= c:
//   bounded for all admissible (p, Q) iff gamma^2 - 4c >= 0 and
//     d0 >= -(gamma + sqrt(gamma^2 - 4c))/2;
//   guaranteed finite-time blow-up iff d0 < -(Gamma + sqrt(Gamma^2 + 4c))/2.
RiccatiClass riccati_classify(double gamma, double Gamma, double c, double d0);

// Majorant constants for the symmetric model under the fast-alignment bound:
// (phi(D) m, m, Lip(phi) m, phi(D) m).
MajorantParams cs_majorant_params(const ModelParams& p, double D);

// Normalized-model constants: (1, 1, 2 Lip(phi)/phi(D), phi(D)).
MajorantParams mt_majorant_params(const InfluenceKernel& kernel, double D);

enum class ThresholdClass { Subcritical, Supercritical, Indeterminate };

// Closed-form 1D threshold for constants taken from cs_majorant_params:
//   subcritical  iff V0 <= phi^2(D) m / (4 Lip) and
//                    d0 >= -(phi(D)m + sqrt(phi^2(D)m^2 - 4 V0 Lip m))/2,
//   supercritical iff d0 < -(m + sqrt(m^2 + 4 V0 Lip m))/2.
ThresholdClass closed_threshold_1d(const MajorantParams& cs, double V0, double d0);

// Closed-form 2D threshold. B0 is the off-trace measure max{|q|,2|r|,2|s|} of
// the initial gradient; the blow-up clause evaluates the shear conditions for
// the symmetric-shear realization r = s = B0/2 of that measure.
ThresholdClass closed_threshold_2d(const MajorantParams& cs, double V0, double d0, double B0);

// Uniform bound curve for (q, r, s) under forcing 2C V(t) with divergence
// floor -gamma + delta: zeta(x) = B on [0, delta B / (2C)], then the explicit
// decaying branch up to its natural right endpoint. std::nullopt past the
// endpoint. Throws std::domain_error for x < 0.
std::optional<double> zeta_value(const GapParams& gp, double C, double G, double x);

// Right endpoint of the zeta domain.
double zeta_domain_end(const GapParams& gp, double C, double G);

// Vacuum admissibility at offset lambda plus the slope floor at distance
// `dist` from the support:
//   V0_lambda <= m phi^2(lambda+D) / (4|phi'(lambda)| + 2|phi'(lambda+D)|)
//   u0x_min   >= -(m/2) phi(dist + D).
bool vacuum_condition_check(const ModelParams& p, double D, double lambda, double V0_lambda,
                            double u0x_min, double dist);

// Slope floor -(m/2) phi(dist + D) used by the vacuum bound.
double vacuum_slope_floor(const ModelParams& p, double D, double dist);

// Right-hand side V0_lambda bound of the vacuum condition.
double vacuum_diameter_bound(const ModelParams& p, double D, double lambda);

}  // namespace flockhd
