#include <doctest.h>

#include <cmath>
#include <numbers>

#include "leocov/geometry.hpp"
#include "leocov/params.hpp"
#include "oracle_values.hpp"

using namespace leocov;

TEST_CASE("coverage geometry at the default altitude") {
    const SphereModel sphere;
    CHECK(horizon_angle(sphere) == doctest::Approx(oracle::horizon_angle).epsilon(1e-14));
    for (const auto& row : oracle::geometry) {
        CAPTURE(row.phi_s_deg);
        const double phi = deg_to_rad(row.phi_s_deg);
        const double rmax = max_slant_range(phi, sphere);
        CHECK(rmax == doctest::Approx(row.r_max).epsilon(1e-12));
        CHECK(coverage_cap_cos_theta3(rmax, phi, sphere) == doctest::Approx(row.cos_theta3).epsilon(1e-14));
        CHECK(std::abs(coverage_cap_versine(rmax, phi, sphere) - (1.0 - row.cos_theta3)) < 1e-10 * (1.0 - row.cos_theta3));
        CHECK(satellite_success_prob(sphere, phi) == doctest::Approx(row.p_sat).epsilon(1e-10));
        CHECK(interferer_success_prob(sphere, 200.0, phi).value == doctest::Approx(row.p_i).epsilon(1e-10));
    }
}

TEST_CASE("slant range limits") {
    const SphereModel sphere;
    CHECK(slant_range(0.0, sphere) == doctest::Approx(400.0).epsilon(1e-15));
    // horizon: tangent length sqrt(rs^2 - re^2)
    const double rs = sphere.shell_radius_km(), re = sphere.earth_radius_km;
    CHECK(slant_range(horizon_angle(sphere), sphere) == doctest::Approx(std::sqrt(rs * rs - re * re)).epsilon(1e-9));
    CHECK_THROWS_AS(slant_range(horizon_angle(sphere) + 1e-3, sphere), DomainError);
    CHECK_THROWS_AS(slant_range(-0.1, sphere), DomainError);
    // monotone in the off-nadir angle
    double prev = 0.0;
    for (double phi = 0.0; phi < horizon_angle(sphere); phi += 0.01) {
        const double r = slant_range(phi, sphere);
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("law of cosines holds for the slant range") {
    const SphereModel sphere{6371.0, 1200.0};
    const double rs = sphere.shell_radius_km(), re = sphere.earth_radius_km;
    for (double phi : {0.05, 0.3, 0.6, 0.9}) {
        const double r = slant_range(phi, sphere);
        // re^2 = rs^2 + r^2 - 2 rs r cos(phi)
        CHECK(rs * rs + r * r - 2.0 * rs * r * std::cos(phi) == doctest::Approx(re * re).epsilon(1e-12));
    }
}

TEST_CASE("cap area") {
    CHECK(cap_area({std::numbers::pi, 1.0}) == doctest::Approx(4.0 * std::numbers::pi));
    CHECK(cap_area({std::numbers::pi / 2, 2.0}) == doctest::Approx(8.0 * std::numbers::pi));
    CHECK(cap_area({0.0, 5.0}) == 0.0);
    CHECK_THROWS_AS(cap_area({4.0, 1.0}), DomainError);
}

TEST_CASE("interferer success probability clamps wide footprints") {
    const SphereModel sphere;
    const auto p = interferer_success_prob(sphere, 50.0, deg_to_rad(35.0));
    CHECK(p.value == 1.0);
    CHECK(p.raw > 1.0);
    CHECK(p.clamped());
    CHECK_FALSE(interferer_success_prob(sphere, 200.0, deg_to_rad(25.0)).clamped());
    CHECK_THROWS_AS(interferer_success_prob(sphere, 0.0, 0.4), DomainError);
}

TEST_CASE("invalid sphere") {
    CHECK_THROWS_AS(SphereModel({-1.0, 400.0}).validate(), DomainError);
    CHECK_THROWS_AS(SphereModel({6371.0, 0.0}).validate(), DomainError);
}
