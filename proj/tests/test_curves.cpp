#include <doctest.h>

#include <cmath>

#include "flockhd/curves.hpp"
#include "flockhd/rng.hpp"
#include "oracles.hpp"

using namespace flockhd;

namespace {

// Independent fixed-step RK4 integration of a curve ODE from the series
// start, for cross-checking the adaptive integrator.
double integrate_curve_ode(const std::function<double(double, double)>& rhs, double anchor,
                           double slope0, double x1) {
  const double eps = 1e-6;
  double y = anchor + slope0 * eps;
  return oracles::rk4(rhs, y, eps, x1, 1e-5);
}

}  // namespace

TEST_CASE("separatrix anchor, slope, and flat case") {
  const ThresholdCurve flat = integrate_separatrix(0.7, 0.0, 1.3, 2.0);
  CHECK(flat.anchor() == -0.7);
  for (double v : flat.values) CHECK(v == doctest::Approx(-0.7).epsilon(1e-12));

  const ThresholdCurve f = integrate_separatrix(1.0, 1.0, 1.0, 2.0);
  CHECK(f.anchor() == -1.0);
  const double h = 1e-3;
  CHECK(std::abs((f.eval(h) - f.anchor()) / h - (-0.5)) < 1e-3);

  // first-order behavior for F < 0: f(x) ~ -E - F x/(E+G)
  const ThresholdCurve g = integrate_separatrix(1.0, -1.0, 1.0, 1.0);
  CHECK(g.eval(0.1) == doctest::Approx(-1.0 + 0.05).epsilon(5e-2));

  CHECK_THROWS_AS(integrate_separatrix(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_separatrix(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("separatrix agrees with an independent integration") {
  for (double F : {1.0, -1.0, 0.4}) {
    const double E = 1.2, G = 0.8;
    const ThresholdCurve f = integrate_separatrix(E, F, G, 1.5);
    const auto rhs = [&](double x, double y) { return (y * y + E * y - F * x) / (G * x); };
    // compare at grid nodes, where the adaptive integrator's own tolerance
    // applies (interpolation between nodes is a separate, coarser statement)
    for (std::size_t k : {std::size_t{100}, std::size_t{300}, f.xs.size() - 1}) {
      const double ref = integrate_curve_ode(rhs, -E, -F / (E + G), f.xs[k]);
      CHECK(f.values[k] == doctest::Approx(ref).epsilon(1e-6));
    }
  }
}

TEST_CASE("sigma curves: anchors, slopes, degenerate forcing") {
  const MajorantParams mp{0.5, 1.0, 0.5, 0.5};
  const ThresholdCurve up = sigma_plus_1d(mp, 2.0);
  const ThresholdCurve lo = sigma_minus_1d(mp, 2.0);
  CHECK(up.anchor() == -0.5);
  CHECK(lo.anchor() == -1.0);
  CHECK(up.xs.front() == 0.0);

  const double h = 1e-3;
  CHECK(std::abs((up.eval(h) - up.anchor()) / h - mp.C / (mp.gamma + mp.G)) < 1e-2);
  CHECK(std::abs((lo.eval(h) - lo.anchor()) / h + mp.C / (mp.Gamma + mp.G)) < 1e-2);

  // C = 0: the upper curve is identically -gamma
  const MajorantParams quiet{0.5, 1.0, 0.0, 0.5};
  const ThresholdCurve flat = sigma_plus_1d(quiet, 2.0);
  for (double v : flat.values) CHECK(v == doctest::Approx(-0.5).epsilon(1e-12));

  // the upper curve rises, the lower curve falls
  CHECK(up.eval(std::min(2.0, up.x_end())) > up.anchor());
  CHECK(lo.eval(std::min(2.0, lo.x_end())) < lo.anchor());

  // interior nodes satisfy the ODE (finite differences vs. midpoint slope)
  for (std::size_t k = 40; k + 1 < up.xs.size(); k += 25) {
    const double xm = 0.5 * (up.xs[k] + up.xs[k + 1]);
    const double vm = 0.5 * (up.values[k] + up.values[k + 1]);
    const double p = vm < 0.0 ? mp.gamma : mp.Gamma;
    const double rhs = (vm * vm + p * vm + mp.C * xm) / (mp.G * xm);
    const double fd = (up.values[k + 1] - up.values[k]) / (up.xs[k + 1] - up.xs[k]);
    CHECK(fd == doctest::Approx(rhs).epsilon(5e-3));
  }
}

TEST_CASE("sigma curve against an independent integration") {
  const MajorantParams mp{0.5, 1.0, 0.5, 0.5};
  const ThresholdCurve up = sigma_plus_1d(mp, 1.2);
  const auto rhs = [&](double x, double y) {
    const double p = y < 0.0 ? mp.gamma : mp.Gamma;
    return (y * y + p * y + mp.C * x) / (mp.G * x);
  };
  for (std::size_t k : {std::size_t{120}, std::size_t{320}, up.xs.size() - 1}) {
    const double ref = integrate_curve_ode(rhs, -mp.gamma, mp.C / (mp.gamma + mp.G), up.xs[k]);
    CHECK(up.values[k] == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("mt sigma curve anchors at -1") {
  const MajorantParams mp{1.0, 1.0, 2.0, 0.5};
  const ThresholdCurve c = mt_sigma_curve(mp, 1.0);
  CHECK(c.anchor() == -1.0);
  CHECK(c.kind == CurveKind::MTSigma);
  const double h = 1e-3;
  CHECK(std::abs((c.eval(h) - c.anchor()) / h - mp.C / (mp.gamma + mp.G)) < 1e-2);
}

TEST_CASE("h curve: flat interval and continuation") {
  // gamma=1, C=0.25, delta=0.5, B=0.5 -> flat width (1 - 0.25 - 0.5)/1 = 0.25
  const MajorantParams mp{1.0, 1.0, 0.25, 0.5};
  const GapParams gp{0.5, 0.5};
  const double flat_end = (1.0 - 0.25 - 0.5) / (4.0 * 0.25);
  CHECK(flat_end == doctest::Approx(0.25));
  const ThresholdCurve h = h_curve_2d(mp, gp, 1.0);
  CHECK(h.anchor() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(h.eval(0.1) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(h.eval(0.24) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(h.eval(0.6) > -0.5);  // rises past the flat interval

  // flat interval collapses when delta^2 = gamma^2 - 2B^2
  const GapParams tight{1.0, 0.0};
  const ThresholdCurve h0 = h_curve_2d(MajorantParams{1.0, 1.0, 0.25, 0.5}, tight, 1.0);
  CHECK(h0.anchor() == doctest::Approx(0.0));

  CHECK_THROWS_AS(h_curve_2d(mp, GapParams{0.5, 0.9}, 1.0), std::invalid_argument);  // B too big
  CHECK_THROWS_AS(h_curve_2d(mp, GapParams{0.95, 0.5}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(h_curve_2d(mp, GapParams{0.0, 0.5}, 1.0), std::invalid_argument);
}

TEST_CASE("zeta sampled curve") {
  const MajorantParams mp{0.5, 1.0, 0.5, 0.5};
  const GapParams gp{0.4, 0.3};
  const ThresholdCurve z = zeta_curve(mp, gp, 3.0);
  CHECK(z.anchor() == 0.3);
  CHECK(z.kind == CurveKind::Zeta2D);
  CHECK(z.gap.has_value());
  if (zeta_domain_end(gp, mp.C, mp.G) < 3.0) CHECK(z.truncated);
}

TEST_CASE("curve evaluation, margins, and classification") {
  const MajorantParams mp{0.5, 1.0, 0.5, 0.5};
  const ThresholdCurve up = sigma_plus_1d(mp, 1.0);
  const ThresholdCurve lo = sigma_minus_1d(mp, 1.0);
  CHECK_THROWS_AS(up.eval(1.5), std::domain_error);
  CHECK_THROWS_AS(up.eval(-0.1), std::domain_error);
  CHECK(up.margin(0.5) > 0.0);

  CHECK(classify_against_curves(up, lo, 0.5, 0.5) == ThresholdClass::Subcritical);
  CHECK(classify_against_curves(up, lo, 0.5, -3.0) == ThresholdClass::Supercritical);
  // near the curve the conservative margin reports indeterminate
  const double at = up.eval(0.5);
  CHECK(classify_against_curves(up, lo, 0.5, at) == ThresholdClass::Indeterminate);
  // beyond the curve domain nothing is certified
  CHECK(classify_against_curves(up, lo, 1.5, 5.0) == ThresholdClass::Indeterminate);
}

TEST_CASE("upper curve escape truncates cleanly") {
  // strong forcing pushes sigma+ through 0 and off to +inf at finite x
  const MajorantParams mp{0.2, 2.0, 5.0, 0.2};
  const ThresholdCurve up = sigma_plus_1d(mp, 50.0);
  CHECK(up.truncated);
  CHECK(up.x_end() < 50.0);
  CHECK(up.values.back() > 1.0);
  CHECK(up.xs.size() == up.values.size());
  // beyond a truncated upper curve nothing is certified
  const ThresholdCurve lo = sigma_minus_1d(mp, 50.0);
  CHECK(classify_against_curves(up, lo, up.x_end() * 1.5, 1e9) ==
        ThresholdClass::Indeterminate);
}
