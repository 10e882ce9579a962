#include <doctest.h>

#include <cmath>

#include "flockhd/majorant.hpp"
#include "flockhd/rng.hpp"
#include "oracles.hpp"

using namespace flockhd;

TEST_CASE("riccati classification at c = 0 is sharp at -gamma / -Gamma") {
  CHECK(riccati_classify(1.0, 1.0, 0.0, -1.0) == RiccatiClass::BoundedForAll);
  CHECK(riccati_classify(1.0, 1.0, 0.0, -1.01) == RiccatiClass::BlowUp);
}

TEST_CASE("riccati classification with forcing, checked by adversarial integration") {
  // gamma = Gamma = 2, c = 1: discriminant 0, bounded threshold -1, blow-up
  // threshold -(2 + sqrt(8))/2.
  const double blow_thr = -0.5 * (2.0 + std::sqrt(8.0));

  // Worst-case survival flow d' = -d^2 - 2d - 1 from -0.9 stays bounded...
  const auto worst = [](double, double d) { return -d * d - 2.0 * d - 1.0; };
  CHECK(oracles::time_to_cross_below(worst, -0.9, -1e3, 200.0) ==
        std::numeric_limits<double>::infinity());
  CHECK(riccati_classify(2.0, 2.0, 1.0, -0.9) == RiccatiClass::BoundedForAll);

  // ...but from -1.4 it diverges, so -1.4 cannot be certified bounded; the
  // friendliest flow d' = -d^2 - 2d + 1 still survives there, so it is not
  // guaranteed blow-up either.
  CHECK(oracles::time_to_cross_below(worst, -1.4, -1e3, 200.0) < 100.0);
  const auto best = [](double, double d) { return -d * d - 2.0 * d + 1.0; };
  CHECK(oracles::time_to_cross_below(best, -1.4, -1e3, 200.0) ==
        std::numeric_limits<double>::infinity());
  CHECK(riccati_classify(2.0, 2.0, 1.0, -1.4) == RiccatiClass::Indeterminate);

  // below the blow-up threshold even the friendliest flow diverges
  CHECK(oracles::time_to_cross_below(best, blow_thr - 0.1, -1e3, 500.0) < 400.0);
  CHECK(riccati_classify(2.0, 2.0, 1.0, blow_thr - 0.1) == RiccatiClass::BlowUp);

  CHECK_THROWS_AS(riccati_classify(1.0, 0.5, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(riccati_classify(1.0, 1.0, -0.1, 0.0), std::invalid_argument);
}

TEST_CASE("symmetric-model majorant constants") {
  const ModelParams p = make_model(ModelParams::Model::CS, 1.0, InfluenceKernel::power_law(0.5));
  const MajorantParams mp = cs_majorant_params(p, 3.0);
  CHECK(mp.gamma == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mp.Gamma == 1.0);
  CHECK(mp.C == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mp.G == doctest::Approx(0.5).epsilon(1e-14));

  const MajorantParams at0 = cs_majorant_params(p, 0.0);
  CHECK(at0.gamma == 1.0);
  CHECK(at0.Gamma == 1.0);
  CHECK(at0.C == 0.5);
  CHECK(at0.G == 1.0);

  const ModelParams p2 =
      make_model(ModelParams::Model::CS, 2.0, InfluenceKernel::power_law(0.5));
  const MajorantParams mp2 = cs_majorant_params(p2, 3.0);
  CHECK(mp2.gamma == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mp2.Gamma == 2.0);
  CHECK(mp2.C == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mp2.G == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normalized-model majorant constants") {
  const InfluenceKernel k = InfluenceKernel::power_law(0.5);
  const MajorantParams mp = mt_majorant_params(k, 3.0);
  CHECK(mp.gamma == 1.0);
  CHECK(mp.Gamma == 1.0);
  CHECK(mp.C == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(mp.G == doctest::Approx(0.5).epsilon(1e-14));

  const MajorantParams at0 = mt_majorant_params(k, 0.0);
  CHECK(at0.C == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(at0.G == 1.0);

  const MajorantParams a1 = mt_majorant_params(InfluenceKernel::power_law(1.0), 1.0);
  CHECK(a1.C == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(a1.G == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("closed-form 1D threshold") {
  // constants phi(D)m = 0.5, m = 1, Lip m = 0.5
  const MajorantParams mp{0.5, 1.0, 0.5, 0.5};

  CHECK(closed_threshold_1d(mp, 0.0, -0.5) == ThresholdClass::Subcritical);   // d0 = -gamma
  CHECK(closed_threshold_1d(mp, 0.0, -1.001) == ThresholdClass::Supercritical);
  CHECK(closed_threshold_1d(mp, 0.0, -0.7) == ThresholdClass::Indeterminate);

  // V0 at the diameter budget phi^2 m/(4 Lip) = 0.125; threshold collapses to
  // -phi(D)m/2 = -0.25
  CHECK(0.5 * 0.5 / (4.0 * 0.5) == doctest::Approx(0.125));
  CHECK(closed_threshold_1d(mp, 0.125, -0.25) == ThresholdClass::Subcritical);
  CHECK(closed_threshold_1d(mp, 0.125, -0.2500001) == ThresholdClass::Indeterminate);
  CHECK(closed_threshold_1d(mp, 0.1251, -0.25) == ThresholdClass::Indeterminate);

  // supercritical side carries the forcing: -(m + sqrt(m^2 + 4 V0 Lip m))/2
  const double v = 0.5;
  const double thr = -0.5 * (1.0 + std::sqrt(1.0 + 4.0 * v * 0.5));
  CHECK(closed_threshold_1d(mp, v, thr - 1e-9) == ThresholdClass::Supercritical);
  CHECK(closed_threshold_1d(mp, v, thr + 1e-9) == ThresholdClass::Indeterminate);
}

TEST_CASE("closed-form 2D threshold") {
  const MajorantParams mp{0.5, 1.0, 0.5, 0.5};

  // at V0 = 0, B0 = 0 the subcritical clause reduces to the 1D one
  CHECK(closed_threshold_2d(mp, 0.0, -0.5, 0.0) == ThresholdClass::Subcritical);
  CHECK(closed_threshold_2d(mp, 0.0, -0.51, 0.0) == ThresholdClass::Indeterminate);

  // worked example: V0 = 0, B0 = 0.1 shifts the slope bound to about -0.49
  const double bound = -0.5 * (0.5 + std::sqrt(0.25 - 2.0 * 0.01));
  CHECK(bound == doctest::Approx(-0.489791576165636).epsilon(1e-12));
  CHECK(closed_threshold_2d(mp, 0.0, -0.2, 0.1) == ThresholdClass::Subcritical);
  CHECK(closed_threshold_2d(mp, 0.0, bound + 1e-9, 0.1) == ThresholdClass::Subcritical);
  CHECK(closed_threshold_2d(mp, 0.0, bound - 1e-9, 0.1) == ThresholdClass::Indeterminate);

  // B0 = 0 reduction: wherever the 2D diameter budget holds, the slope
  // threshold matches the 1D classification
  for (double V0 : {0.0, 0.02, 0.05}) {
    CHECK(V0 <= (std::sqrt(2.0) - 1.0) * 0.25 / 2.0);
    for (double d0 : {-0.1, -0.3, -0.45, -0.6}) {
      const ThresholdClass c2 = closed_threshold_2d(mp, V0, d0, 0.0);
      const ThresholdClass c1 = closed_threshold_1d(mp, V0, d0);
      if (c2 == ThresholdClass::Subcritical) CHECK(c1 == ThresholdClass::Subcritical);
      if (c1 == ThresholdClass::Subcritical) CHECK(c2 == ThresholdClass::Subcritical);
    }
  }
  // and every 2D-subcritical point is 1D-subcritical even with B0 > 0
  flockhd::Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const double V0 = rng.uniform(0.0, 0.2);
    const double d0 = rng.uniform(-1.2, 0.2);
    const double B0 = rng.uniform(0.0, 0.4);
    if (closed_threshold_2d(mp, V0, d0, B0) == ThresholdClass::Subcritical)
      CHECK(closed_threshold_1d(mp, V0, d0) == ThresholdClass::Subcritical);
  }

  // supercritical: divergence below the lower root plus enough shear, with
  // the symmetric-shear reading of B0
  const double v = 0.5;
  const double root = std::sqrt(1.0 + 4.0 * v * 0.5);
  const double dthr = -0.5 * (1.0 + root);
  const double shear_need = (v * 0.5) / root;
  CHECK(closed_threshold_2d(mp, v, dthr - 0.01, 2.0 * shear_need + 0.01) ==
        ThresholdClass::Supercritical);
  CHECK(closed_threshold_2d(mp, v, dthr - 0.01, 2.0 * shear_need - 0.01) ==
        ThresholdClass::Indeterminate);
  // V0 = 0 kills the shear requirement: pure 1D blow-up classification
  CHECK(closed_threshold_2d(mp, 0.0, -1.01, 0.0) == ThresholdClass::Supercritical);
}

TEST_CASE("vacuum admissibility bound") {
  const ModelParams p = make_model(ModelParams::Model::CS, 1.0, InfluenceKernel::power_law(0.5));
  // m = 1, D = 3, lambda = 0: bound = phi^2(3) / (4 |phi'(0)| + 2 |phi'(3)|)
  //                                = 0.25 / (2 + 0.125) = 2/17
  CHECK(vacuum_diameter_bound(p, 3.0, 0.0) ==
        doctest::Approx(0.25 / 2.125).epsilon(1e-13));
  CHECK(vacuum_condition_check(p, 3.0, 0.0, 0.0, 0.0, 0.0));  // both inequalities slack
  const double floor = vacuum_slope_floor(p, 3.0, 1.0);
  CHECK(floor == doctest::Approx(-0.5 * p.kernel(4.0)).epsilon(1e-14));
  CHECK(vacuum_condition_check(p, 3.0, 0.0, 0.1, floor, 1.0));        // boundary slope passes
  CHECK(!vacuum_condition_check(p, 3.0, 0.0, 0.1, floor - 1e-9, 1.0));
  CHECK(!vacuum_condition_check(p, 3.0, 0.0, 0.25 / 2.125 + 1e-6, 0.0, 0.0));
}

TEST_CASE("zeta closed form") {
  // breakpoint at delta B / (2C); flat value B
  GapParams gp{0.5, 2.0};
  CHECK(zeta_value(gp, 1.0, 0.8, 0.0) == 2.0);
  const double x0 = gp.delta * gp.B / 2.0;
  CHECK(*zeta_value(gp, 1.0, 0.8, x0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(*zeta_value(gp, 1.0, 0.8, x0 * (1.0 + 1e-9)) == doctest::Approx(2.0).epsilon(1e-7));

  // log branch at delta = G: x at the breakpoint evaluates to B
  GapParams eq{1.0, 2.0};
  CHECK(*zeta_value(eq, 1.0, 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
  // and closes to zero at x = delta B e / (2C)
  CHECK(*zeta_value(eq, 1.0, 1.0, std::exp(1.0)) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(zeta_value(gp, 1.0, 0.8, -0.1), std::domain_error);
  CHECK(!zeta_value(gp, 1.0, 0.8, zeta_domain_end(gp, 1.0, 0.8) * 1.01).has_value());
}

TEST_CASE("majorant params validation") {
  const MajorantParams bad_gamma{0.0, 1.0, 0.0, 1.0};
  CHECK_THROWS_AS(bad_gamma.validate(), std::invalid_argument);
  const MajorantParams bad_order{1.0, 0.5, 0.0, 1.0};
  CHECK_THROWS_AS(bad_order.validate(), std::invalid_argument);
  const MajorantParams bad_c{0.5, 1.0, -0.1, 1.0};
  CHECK_THROWS_AS(bad_c.validate(), std::invalid_argument);
  const MajorantParams bad_g{0.5, 1.0, 0.1, 0.0};
  CHECK_THROWS_AS(bad_g.validate(), std::invalid_argument);
}
