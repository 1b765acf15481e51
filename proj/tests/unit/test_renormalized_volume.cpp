#include <doctest.h>

#include "pefill/errors.hpp"
#include "pefill/numerics.hpp"
#include "pefill/renormalized_volume.hpp"
#include "pefill/schwarzschild.hpp"

#include <cmath>

using namespace pefill;

namespace {
const double PI = 3.14159265358979323846;
const double S_STAR = 1.0 / std::sqrt(3.0);

// antiderivative oracle for the hyperbolic volume in the geodesic chart
double hyperbolic_volume_oracle(double lambda, double eps) {
    return 8.0 * PI * PI * lambda *
           (1.0 / (3.0 * eps * eps * eps) - 1.0 / (4.0 * eps) + eps / 16.0 -
            eps * eps * eps / 192.0);
}
} // namespace

TEST_CASE("hyperbolic chart") {
    auto chart = build_chart(3, 0.8);
    CHECK(chart.C == doctest::Approx(2.0).epsilon(1e-14));
    // s(x) = 1/x - x/4 inverts x = 2 e^{-r} against s = sinh r
    for (double r : {0.5, 1.0, 3.0}) {
        const double x = 2.0 * std::exp(-r);
        CHECK(chart.s_from_x(x) == doctest::Approx(std::sinh(r)).epsilon(1e-13));
        CHECK(chart.x_from_s(std::sinh(r)) == doctest::Approx(x).epsilon(1e-13));
    }
}

TEST_CASE("Schwarzschild chart normalization") {
    SchwarzschildParams m0;
    m0.n = 3;
    m0.mass = 0.0;
    m0.lambda = 1.0;
    auto c0 = build_chart(m0);
    CHECK(c0.C == doctest::Approx(2.0).epsilon(1e-9));

    auto c1 = build_chart(params_from_horizon(3, 1.0, 2.0));
    CHECK(c1.boundary_defect(1e-4) <= 1e-6);
    // x s -> 1 at the boundary
    const double x = 1e-4;
    CHECK(x * c1.s_from_x(x) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("regularized volume against the antiderivative oracle") {
    auto chart = build_chart(3, 0.6);
    for (double eps : {0.02, 0.1, 0.5, 1.0})
        CHECK(regularized_volume(chart, eps) ==
              doctest::Approx(hyperbolic_volume_oracle(0.6, eps)).epsilon(1e-10));
    // cutoff at the core geodesic leaves nothing
    CHECK(std::abs(regularized_volume(chart, 2.0)) <= 1e-9);
}

TEST_CASE("regularized volume strictly decreasing in eps") {
    auto chart = build_chart(params_from_horizon(3, 1.0, 2.0));
    auto grid = num::geomspace(0.2, 0.02, 8);
    double prev = regularized_volume(chart, grid[0] * 1.5);
    for (double eps : grid) {
        const double v = regularized_volume(chart, eps);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("Schwarzschild shell volume is elementary") {
    auto prm = params_from_horizon(3, 1.0, 2.0);
    auto chart = build_chart(prm);
    const double eps = 0.1;
    const double s_eps = chart.s_from_x(eps);
    const double expected = 8.0 * PI * PI * prm.lambda *
                            (s_eps * s_eps * s_eps - 1.0) / 3.0;
    CHECK(regularized_volume(chart, eps) ==
          doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("extraction matches the closed forms") {
    auto hyp = extract_renormalized_volume(build_chart(3, 0.5));
    CHECK(std::abs(hyp.v_ren) <= 1e-6);

    auto star = extract_renormalized_volume(build_chart(params_from_horizon(3, S_STAR, 2.0)));
    CHECK(star.v_ren ==
          doctest::Approx(8.0 * PI * PI / 27.0).epsilon(1e-3));

    auto unit = extract_renormalized_volume(build_chart(params_from_horizon(3, 1.0, 2.0)));
    CHECK(std::abs(unit.v_ren) <= 1e-3 * 8.0 * PI * PI / 27.0);
}

TEST_CASE("extraction is grid independent within its own uncertainty") {
    auto chart = build_chart(params_from_horizon(3, 0.9, 2.0));
    auto g1 = num::geomspace(0.2, 0.02, 12);
    auto g2 = g1;
    for (double& e : g2) e *= 1.3;
    auto a = extract_renormalized_volume(chart, g1);
    auto b = extract_renormalized_volume(chart, g2);
    // the uncertainty is a heuristic; allow a factor of 2
    CHECK(std::abs(a.v_ren - b.v_ren) <=
          2.0 * (a.uncertainty + b.uncertainty) + 1e-9);
}

TEST_CASE("degenerate eps grid is rejected") {
    auto chart = build_chart(3, 0.5);
    CHECK_THROWS_AS(
        (void)extract_renormalized_volume(chart, num::geomspace(0.2, 0.1999, 12)),
        Error);
}

TEST_CASE("Gauss-Bonnet identity") {
    for (double sh : {1.0 / 3.0, S_STAR, 1.0, 2.0}) {
        auto rep = gauss_bonnet_check(params_from_horizon(3, sh, 2.0));
        CHECK(rep.lhs == doctest::Approx(16.0 * PI * PI));
        CHECK(rep.defect <= 1e-4 * 16.0 * PI * PI);
    }
    for (double lambda : {0.5, 1.0}) {
        auto rep = gauss_bonnet_check_hyperbolic(lambda);
        CHECK(rep.defect <= 1e-8);
    }
}

TEST_CASE("all-indices convention breaks Gauss-Bonnet by 3x the Weyl term") {
    GaussBonnetOptions opts;
    opts.weyl_norm = WeylNorm::AllIndices;
    auto rep = gauss_bonnet_check(params_from_horizon(3, 1.0, 2.0), 2.0, opts);
    const double pair_integral = weyl_energy_closed_form(3, 1.0);
    CHECK(rep.defect == doctest::Approx(3.0 * pair_integral).epsilon(1e-2));
}

TEST_CASE("quadrature Weyl energy matches the closed form") {
    for (double sh : {0.4, 1.0, 1.7})
        CHECK(weyl_energy_quadrature(params_from_horizon(3, sh, 2.0)) ==
              doctest::Approx(weyl_energy_closed_form(3, sh)).epsilon(1e-8));
}
