#include "flockhd/curves.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "flockhd/ode.hpp"

namespace flockhd {

namespace {

std::vector<double> geometric_grid(double eps, double x_max, int nodes) {
  // node 0 sits at the origin, nodes 1..n-1 run geometrically from eps.
  std::vector<double> xs(static_cast<std::size_t>(nodes));
  xs[0] = 0.0;
  const double ratio = x_max / eps;
  for (int k = 1; k < nodes; ++k)
    xs[static_cast<std::size_t>(k)] =
        eps * std::pow(ratio, static_cast<double>(k - 1) / static_cast<double>(nodes - 2));
  xs.back() = x_max;
  return xs;
}

// Integrates y'(x) = rhs(x, y) over the geometric grid, starting from the
// first-order series value at x = eps (both curve families prescribe the
// limit slope there, which sidesteps the 0/0 at the origin). The curve is
// truncated when the value escapes |y| > cap; a step-size underflow raises
// StiffCurveError with the partial curve.
ThresholdCurve integrate_on_grid(CurveKind kind, const MajorantParams& params,
                                 std::optional<GapParams> gap, double anchor, double slope0,
                                 const std::function<double(double, double)>& rhs, double x_max,
                                 int nodes, double flat_until = -1.0) {
  if (!(x_max > 10.0 * kCurveOriginEps))
    throw std::invalid_argument("threshold curve: x_max too small");
  if (nodes < 8) throw std::invalid_argument("threshold curve: need at least 8 nodes");

  ThresholdCurve curve;
  curve.kind = kind;
  curve.params = params;
  curve.gap = gap;
  curve.xs = geometric_grid(kCurveOriginEps, x_max, nodes);
  curve.values.assign(curve.xs.size(), anchor);

  DormandPrince45 stepper;
  std::size_t k = 1;
  double x = 0.0, y = anchor;
  if (flat_until > 0.0) {
    // Flat initial interval: fill nodes inside it, then integrate onward.
    while (k < curve.xs.size() && curve.xs[k] <= flat_until) curve.values[k++] = anchor;
    x = std::max(flat_until, kCurveOriginEps);
  } else {
    x = kCurveOriginEps;
    y = anchor + slope0 * kCurveOriginEps;
    while (k < curve.xs.size() && curve.xs[k] <= x) curve.values[k++] = y;
  }

  for (; k < curve.xs.size(); ++k) {
    const StepStatus st = stepper.integrate(rhs, x, y, curve.xs[k]);
    if (st != StepStatus::Ok) {
      curve.xs.resize(k);
      curve.values.resize(k);
      curve.truncated = true;
      // step underflow while the value is still moderate is genuine
      // stiffness; underflow in the escape regime is just the blow-up of the
      // curve itself
      if (st == StepStatus::StepUnderflow && std::abs(y) < 1e6)
        throw StiffCurveError("stiff threshold curve: step size underflow during integration",
                              curve);
      return curve;
    }
    curve.values[k] = y;
  }
  return curve;
}

}  // namespace

const char* curve_kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::SigmaPlus1D: return "sigma_plus_1d";
    case CurveKind::SigmaMinus1D: return "sigma_minus_1d";
    case CurveKind::Zeta2D: return "zeta_2d";
    case CurveKind::H2D: return "h_2d";
    case CurveKind::SeparatrixF: return "separatrix_f";
    case CurveKind::MTSigma: return "mt_sigma";
  }
  return "unknown";
}

double ThresholdCurve::eval(double x) const {
  if (!(x >= 0.0) || x > x_end() * (1.0 + 1e-12))
    throw std::domain_error("threshold curve: evaluation outside [0, x_end]");
  if (xs.size() == 1) return values.front();
  x = std::min(x, x_end());
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  if (hi >= xs.size()) hi = xs.size() - 1;
  const std::size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return values[lo] + t * (values[hi] - values[lo]);
}

double ThresholdCurve::margin(double x) const {
  if (xs.size() == 1) return 0.0;
  x = std::clamp(x, 0.0, x_end());
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  if (hi >= xs.size()) hi = xs.size() - 1;
  const std::size_t lo = hi - 1;
  auto seg_slope = [&](std::size_t a, std::size_t b) {
    return std::abs((values[b] - values[a]) / (xs[b] - xs[a]));
  };
  double slope = seg_slope(lo, hi);
  if (lo > 0) slope = std::max(slope, seg_slope(lo - 1, lo));
  if (hi + 1 < xs.size()) slope = std::max(slope, seg_slope(hi, hi + 1));
  return (xs[hi] - xs[lo]) * slope;
}

ThresholdCurve integrate_separatrix(double E, double F, double G, double x_max, int nodes) {
  if (!(E > 0.0) || !(G > 0.0))
    throw std::invalid_argument("integrate_separatrix: need E > 0 and G > 0");
  MajorantParams params{E, E, F, G};  // stored for provenance; F may be signed
  auto rhs = [E, F, G](double x, double f) { return (f * f + E * f - F * x) / (G * x); };
  return integrate_on_grid(CurveKind::SeparatrixF, params, std::nullopt, -E, -F / (E + G), rhs,
                           x_max, nodes);
}

ThresholdCurve sigma_plus_1d(const MajorantParams& mp, double x_max, int nodes) {
  mp.validate();
  auto rhs = [mp](double x, double s) {
    const double p = s < 0.0 ? mp.gamma : mp.Gamma;
    return (s * s + p * s + mp.C * x) / (mp.G * x);
  };
  return integrate_on_grid(CurveKind::SigmaPlus1D, mp, std::nullopt, -mp.gamma,
                           mp.C / (mp.gamma + mp.G), rhs, x_max, nodes);
}

ThresholdCurve sigma_minus_1d(const MajorantParams& mp, double x_max, int nodes) {
  mp.validate();
  auto rhs = [mp](double x, double s) {
    return (s * s + mp.Gamma * s - mp.C * x) / (mp.G * x);
  };
  return integrate_on_grid(CurveKind::SigmaMinus1D, mp, std::nullopt, -mp.Gamma,
                           -mp.C / (mp.Gamma + mp.G), rhs, x_max, nodes);
}

ThresholdCurve mt_sigma_curve(const MajorantParams& mp, double x_max, int nodes) {
  mp.validate();
  auto rhs = [mp](double x, double s) {
    const double p = s < 0.0 ? mp.gamma : mp.Gamma;
    return (s * s + p * s + mp.C * x) / (mp.G * x);
  };
  return integrate_on_grid(CurveKind::MTSigma, mp, std::nullopt, -mp.gamma,
                           mp.C / (mp.gamma + mp.G), rhs, x_max, nodes);
}

ThresholdCurve h_curve_2d(const MajorantParams& mp, const GapParams& gp, double x_max,
                          int nodes) {
  mp.validate();
  if (!(gp.B >= 0.0) || !(gp.B <= mp.gamma / std::sqrt(2.0)))
    throw std::invalid_argument("h_curve_2d: need 0 <= B <= gamma/sqrt(2)");
  const double delta_max = std::sqrt(mp.gamma * mp.gamma - 2.0 * gp.B * gp.B);
  if (!(gp.delta > 0.0) || !(gp.delta <= delta_max))
    throw std::invalid_argument("h_curve_2d: need delta in (0, sqrt(gamma^2 - 2 B^2)]");
  const double flat_until =
      (mp.gamma * mp.gamma - gp.delta * gp.delta - 2.0 * gp.B * gp.B) / (4.0 * mp.C);
  auto rhs = [mp, gp](double x, double h) {
    const double p = h < 0.0 ? mp.gamma : mp.Gamma;
    return (h * h + 2.0 * p * h + 4.0 * mp.C * x + 2.0 * gp.B * gp.B) / (2.0 * mp.G * x);
  };
  return integrate_on_grid(CurveKind::H2D, mp, gp, -mp.gamma + gp.delta, 0.0, rhs, x_max, nodes,
                           std::max(flat_until, kCurveOriginEps));
}

ThresholdCurve zeta_curve(const MajorantParams& mp, const GapParams& gp, double x_max,
                          int nodes) {
  mp.validate();
  const double end = zeta_domain_end(gp, mp.C, mp.G);
  ThresholdCurve curve;
  curve.kind = CurveKind::Zeta2D;
  curve.params = mp;
  curve.gap = gp;
  curve.truncated = end < x_max;
  const double span = std::min(end, x_max);
  if (!(span > 10.0 * kCurveOriginEps))
    throw std::invalid_argument("zeta_curve: x_max too small");
  curve.xs = geometric_grid(kCurveOriginEps, span, nodes);
  curve.values.resize(curve.xs.size());
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    auto v = zeta_value(gp, mp.C, mp.G, curve.xs[i]);
    curve.values[i] = v ? *v : 0.0;
  }
  return curve;
}

ThresholdClass classify_against_curves(const ThresholdCurve& upper, const ThresholdCurve& lower,
                                       double V0, double d0) {
  if (V0 <= upper.x_end()) {
    const double u = upper.eval(V0);
    if (d0 > u + upper.margin(V0)) return ThresholdClass::Subcritical;
  }
  if (V0 <= lower.x_end()) {
    const double l = lower.eval(V0);
    if (d0 < l - lower.margin(V0)) return ThresholdClass::Supercritical;
  }
  return ThresholdClass::Indeterminate;
}

}  // namespace flockhd
