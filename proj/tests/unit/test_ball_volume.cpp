#include <doctest.h>

#include "pefill/ball_volume.hpp"
#include "pefill/errors.hpp"

#include <cmath>

using namespace pefill;

namespace {
const double PI = 3.14159265358979323846;
} // namespace

TEST_CASE("hyperbolic ball volume") {
    // Euclidean limit
    const double r0 = 1e-3;
    CHECK(hyperbolic_ball_volume(3, r0) ==
          doctest::Approx(PI * PI * std::pow(r0, 4) / 2.0).epsilon(1e-4));
    // antiderivative of sinh^3
    const double c = std::cosh(1.0);
    CHECK(hyperbolic_ball_volume(3, 1.0) ==
          doctest::Approx(2.0 * PI * PI * (c * c * c / 3.0 - c + 2.0 / 3.0))
              .epsilon(1e-12));
    double prev = 0.0;
    for (double r = 0.25; r <= 3.0; r += 0.25) {
        const double v = hyperbolic_ball_volume(3, r);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("small balls embed") {
    auto est = quotient_ball_volume(2.0, 0.0, 1.0, 200000, 1234);
    const double ref = hyperbolic_ball_volume(3, 1.0);
    CHECK(std::abs(est.mean - ref) <= 3.0 * est.std_error);
}

TEST_CASE("deck overlap shrinks large balls") {
    auto est = quotient_ball_volume(0.5, 0.0, 3.0, 200000, 1234);
    const double ref = hyperbolic_ball_volume(3, 3.0);
    CHECK(est.mean < ref - 5.0 * est.std_error);
}

TEST_CASE("Monte-Carlo scaling and determinism") {
    auto a = quotient_ball_volume(1.0, 0.0, 2.0, 200000, 99);
    auto b = quotient_ball_volume(1.0, 0.0, 2.0, 200000, 99);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.hits == b.hits);

    BallVolumeOptions st, mt;
    st.threads = 1;
    mt.threads = 4;
    auto c = quotient_ball_volume(1.0, 0.0, 2.0, 200000, 99, st);
    auto d = quotient_ball_volume(1.0, 0.0, 2.0, 200000, 99, mt);
    CHECK(c.hits == d.hits);
    CHECK(c.mean == d.mean);

    // std error ~ 1/sqrt(N)
    auto big = quotient_ball_volume(1.0, 0.0, 2.0, 400000, 99);
    const double ratio = big.std_error / a.std_error;
    const double expected = 1.0 / std::sqrt(2.0);
    CHECK(ratio >= expected / 1.2);
    CHECK(ratio <= expected * 1.2);
}

TEST_CASE("sample floor enforced") {
    CHECK_THROWS_AS((void)quotient_ball_volume(1.0, 0.0, 1.0, 10000, 1), Error);
}
