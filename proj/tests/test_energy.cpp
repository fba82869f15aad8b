#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pvgait/energy.hpp"

using namespace pvgait;

TEST_CASE("total power with the hourly-burst communication average") {
  const PowerBudget b;
  const PowerRange r = total_power(b, kIntermittentCommMw);
  CHECK(r.min_mw == doctest::Approx(2.56).epsilon(1e-12));
  CHECK(r.max_mw == doctest::Approx(2.89).epsilon(1e-12));
}

TEST_CASE("total power with the radio always on") {
  const PowerBudget b;
  const PowerRange r = total_power(b, b.comm_active_mw);
  CHECK(r.min_mw == doctest::Approx(12.36).epsilon(1e-12));
  CHECK(r.max_mw == doctest::Approx(12.69).epsilon(1e-12));
}

TEST_CASE("duty cycling blends active and sleep draw") {
  const PowerBudget b;
  const Scalar expected =
      10.5 * (5.0 / 3600.0) + 0.05 * (1.0 - 5.0 / 3600.0);
  CHECK(duty_cycled(b.comm_active_mw, b.comm_sleep_mw, b.duty) ==
        doctest::Approx(expected).epsilon(1e-15));
  CHECK(duty_cycled(1.0, 1.0, 0.3) == doctest::Approx(1.0));
  CHECK(duty_cycled(2.0, 0.0, 1.0) == doctest::Approx(2.0));
  CHECK(duty_cycled(2.0, 0.5, 0.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(duty_cycled(1.0, 0.1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(duty_cycled(-1.0, 0.1, 0.5), std::invalid_argument);
}

TEST_CASE("panel area needed to sustain a draw") {
  HarvestModel h;  // 60 uW/cm^2, no derating
  CHECK(std::abs(required_area_cm2(3.0, h) - 50.0) <= 0.01);
  CHECK(required_area_cm2(2.89, h) == doctest::Approx(2890.0 / 60.0));
  SUBCASE("area scales linearly with draw") {
    CHECK(required_area_cm2(6.0, h) ==
          doctest::Approx(2 * required_area_cm2(3.0, h)));
  }
  SUBCASE("derating inflates the area") {
    h.derating = 0.5;
    CHECK(required_area_cm2(3.0, h) == doctest::Approx(100.0));
  }
  SUBCASE("denser light shrinks the area") {
    HarvestModel bright = h;
    bright.density_uw_cm2 = 120.0;
    CHECK(required_area_cm2(3.0, bright) < required_area_cm2(3.0, h));
  }
  SUBCASE("invalid models are rejected") {
    HarvestModel bad = h;
    bad.density_uw_cm2 = 0.0;
    CHECK_THROWS_AS(required_area_cm2(3.0, bad), std::invalid_argument);
    bad = h;
    bad.derating = 0.0;
    CHECK_THROWS_AS(required_area_cm2(3.0, bad), std::invalid_argument);
    bad.derating = 1.5;
    CHECK_THROWS_AS(required_area_cm2(3.0, bad), std::invalid_argument);
    CHECK_THROWS_AS(required_area_cm2(-1.0, h), std::invalid_argument);
  }
}

TEST_CASE("harvest density composes light level and cell efficiency") {
  CHECK(harvest_density_uw_cm2(316.0, 0.19) == doctest::Approx(316.0 * 0.19));
  // The default model's density corresponds to roughly office-level light.
  const HarvestModel h;
  CHECK(harvest_density_uw_cm2(h.density_uw_cm2 / h.pce, h.pce) ==
        doctest::Approx(h.density_uw_cm2));
  CHECK_THROWS_AS(harvest_density_uw_cm2(100.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(harvest_density_uw_cm2(100.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(harvest_density_uw_cm2(-5.0, 0.19), std::invalid_argument);
}

TEST_CASE("budget validation") {
  PowerBudget b;
  b.compute_max_mw = b.compute_min_mw - 0.1;
  CHECK_THROWS_AS(total_power(b, 0.7), std::invalid_argument);
  PowerBudget neg;
  neg.adc_mw = -0.1;
  CHECK_THROWS_AS(total_power(neg, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(total_power(PowerBudget{}, -0.7), std::invalid_argument);
}
