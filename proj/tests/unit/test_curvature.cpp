#include <doctest.h>

#include "pefill/curvature.hpp"
#include "pefill/errors.hpp"
#include "pefill/numerics.hpp"
#include "pefill/schwarzschild.hpp"

#include <cmath>

using namespace pefill;

namespace {

// Analytic hyperbolic-type profile F = sinh, G = lambda cosh with a graded
// grid near the sphere cap.
MetricProfile sinh_profile(double lambda, double r_max = 5.0,
                           std::size_t points = 201) {
    MetricProfile p;
    p.n = 3;
    p.r = num::linspace(0.0, r_max, points);
    const double h0 = p.r[1];
    p.r.insert(p.r.begin() + 1, {h0 / 32, h0 / 16, h0 / 8, h0 / 4, h0 / 2});
    for (double r : p.r) {
        const double sh = std::sinh(r), ch = std::cosh(r);
        p.F.push_back(sh);
        p.dF.push_back(ch);
        p.ddF.push_back(sh);
        p.G.push_back(lambda * ch);
        p.dG.push_back(lambda * sh);
        p.ddG.push_back(lambda * ch);
    }
    p.cap_kind = CapKind::Sphere;
    p.cap_slope = 1.0;
    return p;
}

MetricProfile flat_profile() {
    MetricProfile p;
    p.n = 3;
    p.r = num::linspace(0.0, 2.0, 101);
    for (double r : p.r) {
        p.F.push_back(r);
        p.dF.push_back(1.0);
        p.ddF.push_back(0.0);
        p.G.push_back(1.0);
        p.dG.push_back(0.0);
        p.ddG.push_back(0.0);
    }
    p.cap_kind = CapKind::Sphere;
    p.cap_slope = 1.0;
    return p;
}

} // namespace

TEST_CASE("constant curvature -1 for the sinh/cosh profile") {
    for (double lambda : {0.5, 1.0, 2.3}) {
        auto rep = sectional_curvatures(sinh_profile(lambda));
        // 1e-10 floor: the cap fit reads (F - r)/r^3 rows whose rounding
        // noise caps the accuracy near the origin
        for (std::size_t i = 0; i < rep.size(); ++i) {
            CHECK(rep.sec_rX[i] == doctest::Approx(-1.0).epsilon(1e-10));
            CHECK(rep.sec_rT[i] == doctest::Approx(-1.0).epsilon(1e-10));
            CHECK(rep.sec_XX[i] == doctest::Approx(-1.0).epsilon(1e-10));
            CHECK(rep.sec_XT[i] == doctest::Approx(-1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("flat cone profile has vanishing sectionals and residual n") {
    auto p = flat_profile();
    auto rep = ricci_and_residual(p, CurvatureOptions{});
    for (std::size_t i = 0; i < rep.size(); ++i) {
        CHECK(std::abs(rep.sec_rX[i]) <= 1e-12);
        CHECK(std::abs(rep.sec_rT[i]) <= 1e-12);
        CHECK(std::abs(rep.sec_XX[i]) <= 1e-12);
        CHECK(std::abs(rep.sec_XT[i]) <= 1e-12);
        CHECK(rep.einstein_residual[i] == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("hyperbolic residual and Weyl vanish") {
    auto rep = full_curvature_report(sinh_profile(1.0));
    CHECK(rep.max_einstein_residual <= 1e-10);
    REQUIRE(rep.has_weyl);
    for (std::size_t i = 0; i < rep.size(); ++i)
        CHECK(std::abs(rep.weyl_norm_sq[i]) <= 1e-10);
}

TEST_CASE("m = 0 export agrees with sinh/cosh pointwise") {
    SchwarzschildParams prm;
    prm.n = 3;
    prm.mass = 0.0;
    prm.lambda = 0.7;
    auto p = export_profile(prm, 6.0, {.grid_points = 201});
    auto a = sectional_curvatures(p);
    auto b = sectional_curvatures(sinh_profile(0.7, 6.0, 201));
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a.sec_rX[i] - b.sec_rX[i]) <= 1e-10);
        CHECK(std::abs(a.sec_XT[i] - b.sec_XT[i]) <= 1e-10);
    }
}

TEST_CASE("Schwarzschild Weyl diagonal matches the closed forms") {
    const double sh = 1.0;
    auto p = export_profile(params_from_horizon(3, sh, 2.0), 8.0);
    auto rep = full_curvature_report(p);
    REQUIRE(rep.has_weyl);
    const double m = mass_from_horizon(3, sh);
    for (std::size_t i = 0; i < rep.size(); ++i) {
        const double s = (i == 0) ? sh : p.F[i];
        const double w = m / (s * s * s);
        const double scale = 1.0 + std::abs(w);
        CHECK(std::abs(rep.weyl_rX[i] + w) <= 1e-8 * scale);
        CHECK(std::abs(rep.weyl_rT[i] - 2.0 * w) <= 1e-8 * scale);
        CHECK(std::abs(rep.weyl_XX[i] - 2.0 * w) <= 1e-8 * scale);
        CHECK(std::abs(rep.weyl_XT[i] + w) <= 1e-8 * scale);
        CHECK(std::abs(rep.weyl_norm_sq[i] - 12.0 * m * m / std::pow(s, 6)) <=
              1e-8 * (1.0 + 12.0 * m * m / std::pow(s, 6)));
        // trace-free rows
        CHECK(std::abs(2.0 * rep.weyl_rX[i] + rep.weyl_rT[i]) <= 1e-8);
        CHECK(std::abs(rep.weyl_rX[i] + rep.weyl_XX[i] + rep.weyl_XT[i]) <= 1e-8);
        CHECK(std::abs(rep.weyl_rT[i] + 2.0 * rep.weyl_XT[i]) <= 1e-8);
    }
}

TEST_CASE("Einstein shortcut equals the Kulkarni-Nomizu assembly") {
    auto p = export_profile(params_from_horizon(3, 0.8, 2.0), 6.0,
                            {.grid_points = 101});
    auto base = ricci_and_residual(p, CurvatureOptions{});
    auto fast = weyl_diagonal(base);
    auto oracle = weyl_kulkarni_nomizu(base);
    for (std::size_t i = 0; i < fast.size(); ++i) {
        const double scale = 1.0 + std::abs(oracle.weyl_rT[i]);
        CHECK(std::abs(fast.weyl_rX[i] - oracle.weyl_rX[i]) <= 1e-10 * scale);
        CHECK(std::abs(fast.weyl_rT[i] - oracle.weyl_rT[i]) <= 1e-10 * scale);
        CHECK(std::abs(fast.weyl_XX[i] - oracle.weyl_XX[i]) <= 1e-10 * scale);
        CHECK(std::abs(fast.weyl_XT[i] - oracle.weyl_XT[i]) <= 1e-10 * scale);
    }
}

TEST_CASE("all-indices norm is exactly 4x the pair norm") {
    auto p = export_profile(params_from_horizon(3, 1.0, 2.0), 6.0,
                            {.grid_points = 101});
    CurvatureOptions pair, all;
    all.weyl_norm = WeylNorm::AllIndices;
    auto a = full_curvature_report(p, pair);
    auto b = full_curvature_report(p, all);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(b.weyl_norm_sq[i] == doctest::Approx(4.0 * a.weyl_norm_sq[i]));
}

TEST_CASE("sectionals invariant under constant rescaling of G") {
    auto p = sinh_profile(1.0);
    auto q = p;
    const double c = 3.7;
    for (std::size_t i = 0; i < q.size(); ++i) {
        q.G[i] *= c;
        q.dG[i] *= c;
        q.ddG[i] *= c;
    }
    auto a = sectional_curvatures(p);
    auto b = sectional_curvatures(q);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.sec_rT[i] == doctest::Approx(b.sec_rT[i]));
        CHECK(a.sec_XT[i] == doctest::Approx(b.sec_XT[i]));
    }
}

TEST_CASE("scal is the trace of the Ricci diagonal") {
    auto rep = ricci_and_residual(export_profile(params_from_horizon(3, 0.5, 2.0), 5.0),
                                  CurvatureOptions{});
    for (std::size_t i = 0; i < rep.size(); ++i)
        CHECK(rep.scal[i] == doctest::Approx(rep.ric_rr[i] + 2.0 * rep.ric_XX[i] +
                                             rep.ric_TT[i]));
}

TEST_CASE("error paths") {
    auto flat = flat_profile();
    auto rep = ricci_and_residual(flat, CurvatureOptions{});
    CHECK_THROWS_AS((void)weyl_diagonal(rep), EinsteinResidualTooLarge);

    CurvatureOptions no_series;
    no_series.use_cap_series = false;
    CHECK_THROWS_AS((void)sectional_curvatures(sinh_profile(1.0), no_series),
                    CapSingularity);

    auto bad = sinh_profile(1.0);
    bad.cap_slope = 1.5;
    CHECK_THROWS_AS((void)sectional_curvatures(bad), InvalidProfile);

    auto shuffled = sinh_profile(1.0);
    std::swap(shuffled.r[3], shuffled.r[4]);
    CHECK_THROWS_AS((void)sectional_curvatures(shuffled), InvalidProfile);
}
