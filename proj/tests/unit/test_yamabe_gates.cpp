#include <doctest.h>

#include "pefill/curvature.hpp"
#include "pefill/gates.hpp"
#include "pefill/schwarzschild.hpp"
#include "pefill/yamabe.hpp"

#include <algorithm>
#include <cmath>

using namespace pefill;

namespace {
const double PI = 3.14159265358979323846;
} // namespace

TEST_CASE("round-sphere Yamabe constants") {
    CHECK(yamabe_sphere(3) ==
          doctest::Approx(6.0 * std::pow(2.0 * PI * PI, 2.0 / 3.0)).epsilon(1e-14));
    CHECK(yamabe_sphere(4) ==
          doctest::Approx(12.0 * std::sqrt(8.0 * PI * PI / 3.0)).epsilon(1e-14));
}

TEST_CASE("constant test function quotient") {
    for (double lambda : {0.1, 1.0, 3.0})
        CHECK(yamabe_constant_test(3, lambda) ==
              doctest::Approx(2.0 * std::pow(8.0 * PI * PI * lambda, 2.0 / 3.0))
                  .epsilon(1e-14));
}

TEST_CASE("small lambda: the constant function minimizes") {
    auto res = yamabe_product(3, 0.05, 128);
    CHECK(res.value ==
          doctest::Approx(2.0 * std::pow(8.0 * PI * PI * 0.05, 2.0 / 3.0))
              .epsilon(1e-6));
    CHECK(res.value == doctest::Approx(res.y_const).epsilon(1e-6));
}

TEST_CASE("Yamabe structural properties") {
    for (double lambda : {0.05, 0.5, 2.0}) {
        auto res = yamabe_product(3, lambda, 128);
        CHECK(res.value <= std::min(res.y_const, res.y_sphere) + 1e-8);
        CHECK(res.value < res.y_sphere - 1e-6); // strict for the product class
        CHECK(res.value_fine >= res.value_coarse - 1e-8);
        CHECK(res.symmetry_reduced);
        REQUIRE(!res.minimizer.empty());
        CHECK(*std::min_element(res.minimizer.begin(), res.minimizer.end()) > 0.0);
    }
}

TEST_CASE("large lambda leaves the constant branch") {
    auto res = yamabe_product(3, 2.0, 128);
    CHECK(res.value < res.y_const - 1e-3);
}

TEST_CASE("gates on the hyperbolic filling") {
    SchwarzschildParams prm;
    prm.n = 3;
    prm.mass = 0.0;
    prm.lambda = 0.5;
    auto rep = full_curvature_report(export_profile(prm, 10.0));
    GateConfig cfg;
    cfg.yamabe_value = yamabe_product(3, 0.5, 128).value;
    auto v = theorem_gates(rep, 0.0, cfg);
    CHECK(v.nonpositive_curvature);
    CHECK(v.sup_weyl <= 1e-9);
    CHECK(v.weyl_energy == 0.0);
    CHECK(v.pinching_ratio <= 1e-12);
    CHECK(v.pinching_pass);
    CHECK(!v.vol_comparison_pass.has_value());
}

TEST_CASE("gates on the Schwarzschild fillings") {
    const double y = yamabe_product(3, 0.5, 128).value;
    GateConfig cfg;
    cfg.delta = 1e-3;
    cfg.yamabe_value = y;
    for (double sh : {1.0 / 3.0, 1.0}) {
        auto rep = full_curvature_report(export_profile(params_from_horizon(3, sh, 2.0), 10.0));
        auto v = theorem_gates(rep, weyl_energy_closed_form(3, sh), cfg);
        // sec(dr ^ T) = -V''/2 > 0 at the horizon
        CHECK(!v.nonpositive_curvature);
        CHECK(v.max_sectional > 0.0);
        // Weyl energy >= 128 pi^2/9 always beats delta Y^{3/2} at delta = 1e-3
        CHECK(v.weyl_energy >= 128.0 * PI * PI / 9.0 - 1e-9);
        CHECK(v.pinching_ratio > cfg.delta);
        CHECK(!v.pinching_pass);
    }
}

TEST_CASE("sup_weyl is reported in the pair convention regardless of input") {
    auto p = export_profile(params_from_horizon(3, 1.0, 2.0), 10.0);
    CurvatureOptions pair, all;
    all.weyl_norm = WeylNorm::AllIndices;
    auto a = theorem_gates(full_curvature_report(p, pair), 16.0 * PI * PI);
    auto b = theorem_gates(full_curvature_report(p, all), 16.0 * PI * PI);
    CHECK(a.sup_weyl == doctest::Approx(b.sup_weyl).epsilon(1e-12));
}
