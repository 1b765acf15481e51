#include <doctest.h>

#include "pefill/curvature.hpp"
#include "pefill/errors.hpp"
#include "pefill/numerics.hpp"
#include "pefill/schwarzschild.hpp"

#include <cmath>

using namespace pefill;

namespace {
const double PI = 3.14159265358979323846;
const double S_STAR = 1.0 / std::sqrt(3.0);
} // namespace

TEST_CASE("potential") {
    SchwarzschildParams m0;
    m0.n = 3;
    m0.mass = 0.0;
    for (double s : {0.3, 1.0, 7.0})
        CHECK(potential(m0, s).v == doctest::Approx(1.0 + s * s));

    SchwarzschildParams m1;
    m1.n = 3;
    m1.mass = 1.0;
    m1.s_h = 1.0;
    CHECK(potential(m1, 1.0).v == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(potential(m1, 1e6).v / 1e12 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS((void)potential(m1, 0.0), NonPositiveRadius);
    CHECK_THROWS_AS((void)potential(m1, -1.0), NonPositiveRadius);
}

TEST_CASE("lambda from the smooth-closure condition") {
    CHECK(lambda_from_horizon(3, S_STAR) == doctest::Approx(S_STAR).epsilon(1e-15));
    CHECK(lambda_from_horizon(3, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lambda_from_horizon(3, 1e-8) == doctest::Approx(2e-8 / (2.0 + 3e-16)));
    CHECK(lambda_max(3) == doctest::Approx(S_STAR).epsilon(1e-15));
    CHECK(horizon_at_lambda_max(3) == doctest::Approx(S_STAR).epsilon(1e-15));
}

TEST_CASE("horizon branches") {
    auto b = horizons_from_lambda(3, 0.5);
    REQUIRE(b.s_plus.has_value());
    REQUIRE(b.s_minus.has_value());
    CHECK(*b.s_plus == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(*b.s_minus == doctest::Approx(1.0).epsilon(1e-14));

    // double root collapses to the single s_plus branch
    auto top = horizons_from_lambda(3, lambda_max(3));
    REQUIRE(top.s_plus.has_value());
    CHECK(*top.s_plus == doctest::Approx(S_STAR).epsilon(1e-12));
    CHECK(!top.s_minus.has_value());

    auto none = horizons_from_lambda(3, 0.6);
    CHECK(!none.s_plus.has_value());
    CHECK(!none.s_minus.has_value());
}

TEST_CASE("mass and normalization independence") {
    CHECK(mass_from_horizon(3, 1.0) == doctest::Approx(1.0));
    CHECK(mass_from_horizon(3, 1.0 / 3.0) == doctest::Approx(5.0 / 27.0));
    CHECK(mass_from_horizon(3, 1e-9) <= 1e-8);

    // omega_n m is fixed by the horizon relation, so branch data cannot move
    auto a = params_from_horizon(3, 0.8, 2.0);
    auto b = params_from_horizon(3, 0.8, 2.1);
    CHECK(a.omega_n * a.mass == doctest::Approx(b.omega_n * b.mass).epsilon(1e-15));
    CHECK(a.lambda == doctest::Approx(b.lambda).epsilon(1e-15));
    CHECK(a.mass != b.mass);
}

TEST_CASE("closed-form invariants") {
    CHECK(renormalized_volume_closed_form(3, S_STAR) ==
          doctest::Approx(8.0 * PI * PI / 27.0).epsilon(1e-14));
    CHECK(std::abs(renormalized_volume_closed_form(3, 1.0)) <= 1e-14);
    CHECK(renormalized_volume_closed_form(3, 1.0 / 3.0) ==
          doctest::Approx(16.0 * PI * PI / 81.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)renormalized_volume_closed_form(4, 1.0),
                    UnsupportedDimension);

    CHECK(weyl_energy_closed_form(3, 1.0) ==
          doctest::Approx(16.0 * PI * PI).epsilon(1e-14));
    CHECK(weyl_energy_closed_form(3, S_STAR) ==
          doctest::Approx(128.0 * PI * PI / 9.0).epsilon(1e-14));
    CHECK(weyl_energy_closed_form(3, 1.0 / 3.0) ==
          doctest::Approx(400.0 * PI * PI / 27.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)weyl_energy_closed_form(4, 1.0), UnsupportedDimension);

    // family minimum at the double root only
    const double floor = 128.0 * PI * PI / 9.0;
    for (double sh : num::linspace(0.05, 3.0, 241)) {
        CHECK(weyl_energy_closed_form(3, sh) >= floor - 1e-10);
        if (std::abs(sh - S_STAR) > 1e-2)
            CHECK(weyl_energy_closed_form(3, sh) > floor + 1e-6);
    }
}

TEST_CASE("lambda(s_h) is unimodal with the peak at the double root") {
    auto grid = num::linspace(0.02, S_STAR - 1e-3, 60);
    for (std::size_t i = 1; i < grid.size(); ++i)
        CHECK(lambda_from_horizon(3, grid[i]) > lambda_from_horizon(3, grid[i - 1]));
    auto tail = num::linspace(S_STAR + 1e-3, 5.0, 60);
    for (std::size_t i = 1; i < tail.size(); ++i)
        CHECK(lambda_from_horizon(3, tail[i]) < lambda_from_horizon(3, tail[i - 1]));
}

TEST_CASE("renormalized volume limits") {
    CHECK(std::abs(renormalized_volume_closed_form(3, 1e-4)) <= 1e-6);
    CHECK(renormalized_volume_closed_form(3, 50.0) < -1e4);
}

TEST_CASE("radial distance round trip") {
    auto prm = params_from_horizon(3, 0.7, 2.0);
    for (double s : {0.7001, 0.8, 1.5, 4.0}) {
        const double r = radial_distance(prm, s);
        CHECK(radius_from_distance(prm, r) == doctest::Approx(s).epsilon(1e-11));
    }
    SchwarzschildParams m0;
    m0.n = 3;
    m0.mass = 0.0;
    m0.lambda = 1.0;
    CHECK(radial_distance(m0, std::sinh(2.0)) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("export closes smoothly and is Einstein") {
    for (double sh : {1.0 / 3.0, S_STAR, 1.0, 2.0}) {
        auto p = export_profile(params_from_horizon(3, sh, 2.0), 8.0);
        CHECK(p.cap_kind == CapKind::Circle);
        CHECK(std::abs(p.cap_slope - 1.0) <= 1e-10);
        CHECK(p.G[0] == 0.0);
        CHECK(p.F[0] == doctest::Approx(sh));
    }
    auto rep = ricci_and_residual(export_profile(params_from_horizon(3, 1.0, 2.0), 10.0),
                                  CurvatureOptions{});
    CHECK(rep.max_einstein_residual <= 1e-8);
}

TEST_CASE("exported m = 0 profile matches sinh/lambda cosh") {
    SchwarzschildParams prm;
    prm.n = 3;
    prm.mass = 0.0;
    prm.lambda = 0.4;
    auto p = export_profile(prm, 6.0, {.grid_points = 101});
    CHECK(p.cap_kind == CapKind::Sphere);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(std::abs(p.F[i] - std::sinh(p.r[i])) <= 1e-10 * std::cosh(p.r[i]));
        CHECK(std::abs(p.G[i] - 0.4 * std::cosh(p.r[i])) <=
              1e-10 * std::cosh(p.r[i]));
    }
}
