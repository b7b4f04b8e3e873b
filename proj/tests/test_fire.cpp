/**
 * @file test_fire.cpp
 * @brief Tests of the design-fire curves and exposed-face flux helpers.
 */
#include "hygrotherm/fire.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace hygrotherm;

TEST_CASE("cellulosic standard curve anchors") {
    CHECK(fire::gas_temperature(fire::Scenario::Iso834, 0.0) == 293.15);
    CHECK(fire::gas_temperature(fire::Scenario::Iso834, 1800.0) ==
          doctest::Approx(1114.9459).epsilon(1e-5));
    // 60 min value from the published table: 945.34 C rise.
    CHECK(fire::gas_temperature(fire::Scenario::Iso834, 3600.0) ==
          doctest::Approx(293.15 + 925.34).epsilon(1e-4));
}

TEST_CASE("hydrocarbon curve anchors and asymptote") {
    CHECK(fire::gas_temperature(fire::Scenario::Hydrocarbon, 0.0) ==
          doctest::Approx(293.15).epsilon(1e-12));
    const double one_hour = fire::gas_temperature(fire::Scenario::Hydrocarbon, 3600.0);
    CHECK(std::abs(one_hour - 1373.15) < 1.0);
    // Bounded by the 1080 K rise for all times (attained in floating point
    // once the exponentials underflow).
    for (double t : {60.0, 600.0, 7200.0, 36000.0}) {
        CHECK(fire::gas_temperature(fire::Scenario::Hydrocarbon, t) <=
              293.15 + 1080.0);
    }
}

TEST_CASE("fire curves grow monotonically while burning") {
    for (auto s : {fire::Scenario::Iso834, fire::Scenario::Hydrocarbon}) {
        double prev = fire::gas_temperature(s, 0.0);
        for (double t = 10.0; t <= 7200.0; t += 10.0) {
            const double cur = fire::gas_temperature(s, t);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("parametric curve heats, peaks at 20 min, cools to ambient") {
    const auto pm = [](double t) {
        return fire::gas_temperature(fire::Scenario::Parametric, t);
    };
    CHECK(pm(0.0) == doctest::Approx(293.15).epsilon(1e-12));

    // Strictly increasing up to the fuel-controlled limit.
    double prev = pm(0.0);
    for (double t = 5.0; t <= 1200.0; t += 5.0) {
        const double cur = pm(t);
        CHECK(cur > prev);
        prev = cur;
    }
    // Peak value: about 877.6 C at exactly 20 min.
    CHECK(pm(1200.0) == doctest::Approx(1150.73).epsilon(1e-3));
    CHECK(pm(1200.0) > pm(1195.0));
    CHECK(pm(1200.0) > pm(1205.0));

    // Continuity at the branch switch.
    CHECK(std::abs(pm(1200.0 + 1e-6) - pm(1200.0)) < 1e-4);

    // Linear cooling at about 0.841 K/s until the ambient floor.
    const double slope = (pm(1500.0) - pm(1300.0)) / 200.0;
    CHECK(slope == doctest::Approx(-0.8410).epsilon(1e-3));
    for (double t = 1210.0; t <= 2190.0; t += 10.0) {
        CHECK(pm(t) > pm(t + 10.0));
    }
    CHECK(pm(2250.0) == 293.15);
    CHECK(pm(7200.0) == 293.15);
}

TEST_CASE("constant-ambient scenario is flat") {
    for (double t : {0.0, 1.0, 3600.0, 1e6}) {
        CHECK(fire::gas_temperature(fire::Scenario::ConstantAmbient, t) ==
              293.15);
    }
}

TEST_CASE("negative times are rejected") {
    for (auto s : {fire::Scenario::Iso834, fire::Scenario::Hydrocarbon,
                   fire::Scenario::Parametric, fire::Scenario::ConstantAmbient}) {
        CHECK_THROWS_AS(fire::gas_temperature(s, -1.0), std::domain_error);
        CHECK_THROWS_AS(fire::gas_temperature(s, std::nan("")),
                        std::domain_error);
    }
}

TEST_CASE("scenario names round-trip and defaults are scenario-keyed") {
    for (auto s : {fire::Scenario::Iso834, fire::Scenario::Hydrocarbon,
                   fire::Scenario::Parametric, fire::Scenario::ConstantAmbient}) {
        CHECK(fire::scenario_from_string(fire::to_string(s)) == s);
    }
    CHECK_THROWS_AS(fire::scenario_from_string("bogus"), std::invalid_argument);
    CHECK(fire::default_convection(fire::Scenario::Iso834) == 25.0);
    CHECK(fire::default_convection(fire::Scenario::Hydrocarbon) == 50.0);
    CHECK(fire::default_convection(fire::Scenario::Parametric) == 35.0);
}

TEST_CASE("thermal load anchor at ambient") {
    fire::BoundaryParams bp; // defaults: alpha 25, e 0.7, sigma 5.67e-8
    CHECK(fire::thermal_load(bp, 293.15) ==
          doctest::Approx(7621.87).epsilon(1e-5));
}

TEST_CASE("heat flux vanishes bitwise at thermal equilibrium") {
    fire::BoundaryParams bp;
    for (double theta : {293.15, 400.0, 1114.9459, 1373.134}) {
        CHECK(fire::heat_flux_out(bp, theta, theta) == 0.0);
    }
    // Hotter surface sheds heat; colder surface absorbs it.
    CHECK(fire::heat_flux_out(bp, 400.0, 293.15) > 0.0);
    CHECK(fire::heat_flux_out(bp, 293.15, 400.0) < 0.0);
}

TEST_CASE("moisture flux is linear in the surface pressure") {
    fire::BoundaryParams bp; // beta 0.019, ambient 1754.2 Pa
    CHECK(fire::moisture_flux_out(bp, 1754.2) == 0.0);
    CHECK(fire::moisture_flux_out(bp, 2.0 * 1754.2) ==
          doctest::Approx(33.3298).epsilon(1e-10));
    CHECK(fire::moisture_flux_out(bp, 0.0) ==
          doctest::Approx(-33.3298).epsilon(1e-10));
}

TEST_CASE("boundary parameter validation") {
    fire::BoundaryParams ok;
    CHECK_NOTHROW(ok.validate());
    fire::BoundaryParams bad = ok;
    bad.emissivity = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.convection_coeff = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.ambient_vapor_pressure = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
