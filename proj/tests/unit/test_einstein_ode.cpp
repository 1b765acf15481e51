#include <doctest.h>

#include "pefill/einstein_ode.hpp"
#include "pefill/numerics.hpp"
#include "pefill/schwarzschild.hpp"

#include <cmath>

using namespace pefill;

TEST_CASE("cap recursion yields the sinh coefficients exactly") {
    auto seed = series_seed(3, 7);
    REQUIRE(seed.order == 7);
    for (int m = 1; m <= 7; m += 2) CHECK(seed.coeffs[m] == 1);
    for (int m = 2; m <= 7; m += 2) CHECK(seed.coeffs[m] == 0);

    // dimension-independence of the recursion
    for (int n : {3, 4, 5, 6}) {
        auto s = series_seed(n, 101);
        for (int m = 1; m <= 101; m += 2) CHECK(s.coeffs[m] == 1);
    }

    auto tiny = series_seed(3, 1);
    CHECK(tiny.coeffs[1] == 1);
}

TEST_CASE("alternating factorial identity") {
    // Q = 2 instance by hand: 1/4 - 1/6 = 1/12 = 2/4!
    CHECK(combinatorial_identity_check(2));
    CHECK(combinatorial_identity_check(100));
    // full row k = 0..2Q telescopes to zero
    for (int q : {2, 3, 10, 40}) CHECK(alternating_row_sum(q) == 0);
}

TEST_CASE("integration reproduces sinh/cosh") {
    auto seed = series_seed(3, 31);
    auto sol = integrate_profiles(3, seed, 1.0, 10.0, 1e-10);
    CHECK(sol.residuals.max_abs <= 1e-9);
    double dev_f = 0.0, dev_g = 0.0;
    for (std::size_t i = 0; i < sol.profile.r.size(); ++i) {
        const double r = sol.profile.r[i];
        dev_f = std::max(dev_f,
                         std::abs(sol.profile.F[i] - std::sinh(r)) / std::cosh(r));
        dev_g = std::max(dev_g,
                         std::abs(sol.profile.G[i] - std::cosh(r)) / std::cosh(r));
    }
    CHECK(dev_f <= 1e-8);
    CHECK(dev_g <= 1e-8);
}

TEST_CASE("G equation is linear: G0 = lambda scales the solution") {
    auto seed = series_seed(3, 31);
    const double lambda = 0.37;
    auto sol = integrate_profiles(3, seed, lambda, 6.0, 1e-10);
    double dev = 0.0;
    for (std::size_t i = 0; i < sol.profile.r.size(); ++i)
        dev = std::max(dev, std::abs(sol.profile.G[i] -
                                     lambda * std::cosh(sol.profile.r[i])) /
                                std::cosh(sol.profile.r[i]));
    CHECK(dev <= 1e-8);
}

TEST_CASE("general-n integration stays Einstein") {
    auto seed = series_seed(5, 31);
    auto sol = integrate_profiles(5, seed, 1.0, 5.0, 1e-10);
    CHECK(sol.residuals.max_abs <= 1e-8);
    double dev = 0.0;
    for (std::size_t i = 0; i < sol.profile.r.size(); ++i)
        dev = std::max(dev, std::abs(sol.profile.F[i] -
                                     std::sinh(sol.profile.r[i])) /
                                std::cosh(sol.profile.r[i]));
    CHECK(dev <= 1e-8);
}

TEST_CASE("tightening the tolerance tightens the solution") {
    auto seed = series_seed(3, 31);
    auto dev_at = [&](double tol) {
        auto sol = integrate_profiles(3, seed, 1.0, 8.0, tol);
        double dev = 0.0;
        for (std::size_t i = 0; i < sol.profile.r.size(); ++i)
            dev = std::max(dev, std::abs(sol.profile.F[i] -
                                         std::sinh(sol.profile.r[i])) /
                                    std::cosh(sol.profile.r[i]));
        return dev;
    };
    // a 10x tolerance drop must buy at least the factor 2 that halving claims
    CHECK(dev_at(1e-7) <= 0.5 * dev_at(1e-6));
}

TEST_CASE("residuals of the displayed system") {
    // exact solution with analytic derivative columns
    MetricProfile p;
    p.n = 3;
    p.r = num::linspace(0.0, 5.0, 201);
    for (double r : p.r) {
        p.F.push_back(std::sinh(r));
        p.dF.push_back(std::cosh(r));
        p.ddF.push_back(std::sinh(r));
        p.G.push_back(std::cosh(r));
        p.dG.push_back(std::sinh(r));
        p.ddG.push_back(std::cosh(r));
    }
    p.cap_kind = CapKind::Sphere;
    CHECK(ode_residuals(p, 3).max_abs <= 1e-9);

    auto ads = export_profile(params_from_horizon(3, 1.0 / std::sqrt(3.0), 2.0), 8.0);
    CHECK(ode_residuals(ads, 3).max_abs <= 1e-8);

    // flat cone: first equation evaluates to -n everywhere
    MetricProfile flat;
    flat.n = 3;
    flat.r = num::linspace(0.5, 2.0, 31);
    for (double r : flat.r) {
        flat.F.push_back(r);
        flat.dF.push_back(1.0);
        flat.ddF.push_back(0.0);
        flat.G.push_back(1.0);
        flat.dG.push_back(0.0);
        flat.ddG.push_back(0.0);
    }
    auto res = ode_residuals(flat, 3);
    for (double v : res.eq1) CHECK(v == doctest::Approx(-3.0).epsilon(1e-12));
}
