#include "flockhd/majorant.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flockhd {

void MajorantParams::validate() const {
  if (!(gamma > 0.0) || !(Gamma >= gamma))
    throw std::invalid_argument("majorant params: need 0 < gamma <= Gamma");
  if (!(C >= 0.0)) throw std::invalid_argument("majorant params: need C >= 0");
  if (!(G > 0.0)) throw std::invalid_argument("majorant params: need G > 0");
}

RiccatiClass riccati_classify(double gamma, double Gamma, double c, double d0) {
  if (!(gamma > 0.0) || !(Gamma >= gamma) || !(c >= 0.0))
    throw std::invalid_argument("riccati_classify: need 0 < gamma <= Gamma, c >= 0");
  const double disc = gamma * gamma - 4.0 * c;
  if (disc >= 0.0 && d0 >= -0.5 * (gamma + std::sqrt(disc))) return RiccatiClass::BoundedForAll;
  if (d0 < -0.5 * (Gamma + std::sqrt(Gamma * Gamma + 4.0 * c))) return RiccatiClass::BlowUp;
  return RiccatiClass::Indeterminate;
}

MajorantParams cs_majorant_params(const ModelParams& p, double D) {
  if (!(D >= 0.0)) throw std::domain_error("cs_majorant_params: D must be nonnegative");
  const double m = p.interaction_bound();
  const double phiD = p.kernel(D);
  MajorantParams mp{phiD * m, m, p.kernel.lipschitz() * m, phiD * m};
  mp.validate();
  return mp;
}

MajorantParams mt_majorant_params(const InfluenceKernel& kernel, double D) {
  if (!(D >= 0.0) || !std::isfinite(D))
    throw std::domain_error("mt_majorant_params: D must be finite and nonnegative");
  const double phiD = kernel(D);
  if (!(phiD > 0.0)) throw std::domain_error("mt_majorant_params: phi(D) must be positive");
  MajorantParams mp{1.0, 1.0, 2.0 * kernel.lipschitz() / phiD, phiD};
  mp.validate();
  return mp;
}

ThresholdClass closed_threshold_1d(const MajorantParams& cs, double V0, double d0) {
  cs.validate();
  if (!(V0 >= 0.0)) throw std::domain_error("closed_threshold_1d: V0 must be nonnegative");
  // cs carries (phi(D)m, m, Lip m, phi(D)m); the constant forcing bound of the
  // non-fast majorant is c = V0 * Lip * m = C * V0.
  const double c = cs.C * V0;
  const double disc = cs.gamma * cs.gamma - 4.0 * c;
  if (disc >= 0.0 && d0 >= -0.5 * (cs.gamma + std::sqrt(disc)))
    return ThresholdClass::Subcritical;
  if (d0 < -0.5 * (cs.Gamma + std::sqrt(cs.Gamma * cs.Gamma + 4.0 * c)))
    return ThresholdClass::Supercritical;
  return ThresholdClass::Indeterminate;
}

ThresholdClass closed_threshold_2d(const MajorantParams& cs, double V0, double d0, double B0) {
  cs.validate();
  if (!(V0 >= 0.0) || !(B0 >= 0.0))
    throw std::domain_error("closed_threshold_2d: V0, B0 must be nonnegative");
  const double c = cs.C * V0;  // = V0 Lip m
  const double g2 = cs.gamma * cs.gamma;
  const double a = g2 - 4.0 * c;

  // Subcritical clause: diameter bound with the (sqrt(2)-1) factor, slope
  // bound carrying -2 B0^2, and the nested-radical budget for B0.
  const bool v_ok = V0 <= (std::sqrt(2.0) - 1.0) * g2 / (4.0 * cs.C);
  const double slope_disc = a - 2.0 * B0 * B0;
  const bool d_ok = slope_disc >= 0.0 && d0 >= -0.5 * (cs.gamma + std::sqrt(slope_disc));
  const double inner = a * a - 32.0 * c * c;
  const bool b_ok = inner >= 0.0 && a + std::sqrt(inner) >= 0.0 &&
                    B0 <= 0.5 * std::sqrt(a + std::sqrt(inner));
  if (v_ok && d_ok && b_ok) return ThresholdClass::Subcritical;

  // Blow-up clause: divergence below the lower root and both shears at least
  // c / sqrt(Gamma^2 + 4c) with positive product; with the symmetric-shear
  // realization r = s = B0/2 both magnitudes equal B0/2.
  const double root = std::sqrt(cs.Gamma * cs.Gamma + 4.0 * c);
  const bool d_blow = d0 < -0.5 * (cs.Gamma + root);
  const double shear_need = c / root;
  const bool shear_ok = 0.5 * B0 >= shear_need && (B0 > 0.0 || shear_need == 0.0);
  if (d_blow && shear_ok) return ThresholdClass::Supercritical;

  return ThresholdClass::Indeterminate;
}

double zeta_domain_end(const GapParams& gp, double C, double G) {
  const double x0 = gp.delta * gp.B / (2.0 * C);
  if (gp.delta == G) return x0 * std::exp(1.0);
  return x0 * std::pow(gp.delta / G, G / (gp.delta - G));
}

std::optional<double> zeta_value(const GapParams& gp, double C, double G, double x) {
  if (!(gp.delta > 0.0) || !(gp.B > 0.0) || !(C > 0.0) || !(G > 0.0))
    throw std::invalid_argument("zeta_value: delta, B, C, G must be positive");
  if (!(x >= 0.0)) throw std::domain_error("zeta_value: x must be nonnegative");
  const double x0 = gp.delta * gp.B / (2.0 * C);
  if (x <= x0) return gp.B;
  if (x > zeta_domain_end(gp, C, G) * (1.0 + 1e-15)) return std::nullopt;
  const double u = x / x0;  // = 2C x / (delta B) >= 1
  if (gp.delta == G) return (2.0 * C / gp.delta) * (1.0 - std::log(u)) * x;
  // Explicit solution of w' = -delta w + 2C eta, eta' = -G eta through the
  // tangency point (x0, B), written in terms of u = x/x0.
  return gp.B / (gp.delta - G) * (gp.delta * u - G * std::pow(u, gp.delta / G));
}

double vacuum_slope_floor(const ModelParams& p, double D, double dist) {
  if (!(dist >= 0.0)) throw std::domain_error("vacuum_slope_floor: dist must be nonnegative");
  return -0.5 * p.interaction_bound() * p.kernel(dist + D);
}

double vacuum_diameter_bound(const ModelParams& p, double D, double lambda) {
  if (!(lambda >= 0.0))
    throw std::domain_error("vacuum_diameter_bound: lambda must be nonnegative");
  const double m = p.interaction_bound();
  const double phiLD = p.kernel(lambda + D);
  const double denom =
      4.0 * std::abs(p.kernel.derivative(lambda)) + 2.0 * std::abs(p.kernel.derivative(lambda + D));
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return m * phiLD * phiLD / denom;
}

bool vacuum_condition_check(const ModelParams& p, double D, double lambda, double V0_lambda,
                            double u0x_min, double dist) {
  if (!(V0_lambda >= 0.0))
    throw std::domain_error("vacuum_condition_check: V0_lambda must be nonnegative");
  return V0_lambda <= vacuum_diameter_bound(p, D, lambda) &&
         u0x_min >= vacuum_slope_floor(p, D, dist);
}

}  // namespace flockhd
