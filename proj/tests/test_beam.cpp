#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "pemb/beam.hpp"

using pemb::BeamSpec;

TEST_CASE("rectangular section derives mass, stiffness and gyration radius", "[beam]") {
    const BeamSpec s = BeamSpec::rectangular(1.0, 0.03, 0.002, 69.0e9, 2700.0);
    CHECK_THAT(s.lambda, Catch::Matchers::WithinRel(0.162, 1e-12));
    CHECK_THAT(s.k_M, Catch::Matchers::WithinRel(1.38, 1e-12));
    CHECK_THAT(s.r0, Catch::Matchers::WithinRel(0.002 / std::sqrt(12.0), 1e-12));
    CHECK(s.t0 == 1.0);
}

TEST_CASE("beta for the aluminum reference beam", "[beam]") {
    const BeamSpec s = BeamSpec::rectangular(1.0, 0.03, 0.002, 69.0e9, 2700.0);
    CHECK_THAT(pemb::beta(s), Catch::Matchers::WithinRel(0.3426241444320965, 1e-12));
}

TEST_CASE("beta on normalized specs", "[beam]") {
    BeamSpec unit;
    unit.lambda = 1.0;
    unit.l = 1.0;
    unit.k_M = 1.0;
    unit.r0 = 1.0;
    CHECK(pemb::beta(unit) == 1.0);

    BeamSpec heavy = unit;
    heavy.lambda = 4.0;
    CHECK_THAT(pemb::beta(heavy), Catch::Matchers::WithinRel(2.0, 1e-14));
}

TEST_CASE("beta squared times t0^2 k_M reproduces lambda l^4", "[beam]") {
    std::mt19937 rng(7101);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        BeamSpec s;
        s.lambda = dist(rng);
        s.l = dist(rng);
        s.k_M = dist(rng);
        s.t0 = dist(rng);
        s.r0 = dist(rng);
        const double b = pemb::beta(s);
        const double lhs = b * b * s.t0 * s.t0 * s.k_M;
        const double rhs = s.lambda * std::pow(s.l, 4);
        CHECK_THAT(lhs, Catch::Matchers::WithinRel(rhs, 1e-14));
    }
}

TEST_CASE("spec validation rejects non-positive fields", "[beam]") {
    BeamSpec s;
    s.lambda = 1.0;
    s.l = 1.0;
    s.k_M = 1.0;
    s.r0 = 1.0;
    CHECK_NOTHROW(s.validate());

    for (double BeamSpec::*field : {&BeamSpec::lambda, &BeamSpec::l, &BeamSpec::k_M,
                                    &BeamSpec::t0, &BeamSpec::r0}) {
        BeamSpec bad = s;
        bad.*field = 0.0;
        CHECK_THROWS_AS(bad.validate(), pemb::domain_error);
        bad.*field = -1.0;
        CHECK_THROWS_AS(bad.validate(), pemb::domain_error);
    }
    CHECK_THROWS_AS(BeamSpec::rectangular(0.0, 0.03, 0.002, 69e9, 2700), pemb::domain_error);
    CHECK_THROWS_AS(BeamSpec::rectangular(1.0, 0.03, 0.002, -1.0, 2700), pemb::domain_error);
}

TEST_CASE("modal frequencies follow the (m pi)^2 / beta law", "[beam]") {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK_THAT(pemb::modal_frequency(1, 1.0), Catch::Matchers::WithinRel(pi2, 1e-14));
    CHECK_THAT(pemb::modal_frequency(2, 1.0), Catch::Matchers::WithinRel(4.0 * pi2, 1e-14));
    CHECK_THAT(pemb::modal_frequency(3, 2.0), Catch::Matchers::WithinRel(4.5 * pi2, 1e-14));
    // Doubling the mode index quadruples the frequency.
    for (int m = 1; m <= 6; ++m)
        CHECK_THAT(pemb::modal_frequency(2 * m, 0.7),
                   Catch::Matchers::WithinRel(4.0 * pemb::modal_frequency(m, 0.7), 1e-13));

    CHECK_THROWS_AS(pemb::modal_frequency(0, 1.0), pemb::domain_error);
    CHECK_THROWS_AS(pemb::modal_frequency(1, 0.0), pemb::domain_error);
    CHECK_THROWS_AS(pemb::modal_frequency(1, -1.0), pemb::domain_error);
}

TEST_CASE("scaling maps round-trip", "[beam]") {
    const BeamSpec s = BeamSpec::rectangular(1.7, 0.04, 0.003, 200e9, 7800, 0.25);
    const pemb::Scaling sc(s);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double v = dist(rng);
        CHECK_THAT(sc.from_abscissa(sc.to_abscissa(v)), Catch::Matchers::WithinRel(v, 1e-12));
        CHECK_THAT(sc.from_time(sc.to_time(v)), Catch::Matchers::WithinRel(v, 1e-12));
        CHECK_THAT(sc.from_deflection(sc.to_deflection(v)),
                   Catch::Matchers::WithinRel(v, 1e-12));
        CHECK_THAT(sc.from_shear(sc.to_shear(v)), Catch::Matchers::WithinRel(v, 1e-12));
        CHECK_THAT(sc.from_moment(sc.to_moment(v)), Catch::Matchers::WithinRel(v, 1e-12));
    }
    // The shear and moment scales differ by one length factor.
    CHECK_THAT(sc.from_shear(1.0) * s.l, Catch::Matchers::WithinRel(sc.from_moment(1.0), 1e-12));
}
