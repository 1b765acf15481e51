#pragma once

#include "pefill/errors.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pefill::num {

// ---------------------------------------------------------------------------
// Finite differences on arbitrary (non-uniform) grids, Fornberg weights.
// ---------------------------------------------------------------------------

/// Weights w such that f^(order)(x0) ~ sum_i w[i] * f(nodes[i]).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

/// First and second derivative samples of f on the grid, 5-point stencils,
/// one-sided at the ends.
struct DerivativeSamples {
    std::vector<double> d1;
    std::vector<double> d2;
};
DerivativeSamples differentiate(std::span<const double> x, std::span<const double> f);

// ---------------------------------------------------------------------------
// Quadrature (adaptive Gauss-Kronrod, backed by Boost.Math).
// ---------------------------------------------------------------------------

/// Integrates f over [a, b] to relative tolerance rel_tol.
/// Throws QuadratureFailure if the error estimate does not meet the target.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13);

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

/// Root of f in the bracket [lo, hi] (f(lo), f(hi) of opposite sign),
/// bisection-safeguarded Newton using the supplied derivative.
double newton_bracketed(const std::function<double(double)>& f,
                        const std::function<double(double)>& df,
                        double lo, double hi, double x0, double tol = 1e-14);

// ---------------------------------------------------------------------------
// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)).
// ---------------------------------------------------------------------------

template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N>
using OdeRhs = std::function<void(double, const OdeState<N>&, OdeState<N>&)>;

struct OdeStats {
    std::size_t steps = 0;
    std::size_t rejected = 0;
    double max_local_error = 0.0; // max accepted scaled error estimate
};

namespace detail {

template <std::size_t N>
struct Dopri5 {
    // Butcher tableau, Dormand-Prince 5(4).
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    // clang-format off
    static constexpr double
        a21 = 1.0/5,
        a31 = 3.0/40,       a32 = 9.0/40,
        a41 = 44.0/45,      a42 = -56.0/15,      a43 = 32.0/9,
        a51 = 19372.0/6561, a52 = -25360.0/2187, a53 = 64448.0/6561, a54 = -212.0/729,
        a61 = 9017.0/3168,  a62 = -355.0/33,     a63 = 46732.0/5247, a64 = 49.0/176,  a65 = -5103.0/18656,
        b1  = 35.0/384,     b3  = 500.0/1113,    b4  = 125.0/192,    b5  = -2187.0/6784, b6 = 11.0/84,
        e1  = 71.0/57600,   e3  = -71.0/16695,   e4  = 71.0/1920,    e5  = -17253.0/339200,
        e6  = 22.0/525,     e7  = -1.0/40;
    // clang-format on

    const OdeRhs<N>& rhs;
    explicit Dopri5(const OdeRhs<N>& f) : rhs(f) {}

    // One trial step from (t, y) with size h. Returns scaled error estimate.
    double step(double t, const OdeState<N>& y, double h, OdeState<N>& y_out,
                double atol, double rtol) const {
        OdeState<N> k1, k2, k3, k4, k5, k6, k7, tmp;
        rhs(t, y, k1);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, tmp, k2);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, tmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, tmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, tmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, tmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            y_out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, y_out, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
            double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y_out[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        return err;
    }
};

} // namespace detail

/// Integrates y' = rhs(t, y) from t_grid.front() to t_grid.back(), recording the
/// solution at every grid time. Local error controlled against atol + rtol*|y|.
/// Throws StepFailure when step control stalls.
template <std::size_t N>
OdeStats integrate_ode(const OdeRhs<N>& rhs, OdeState<N> y, std::span<const double> t_grid,
                       double rtol, double atol,
                       const std::function<void(std::size_t, const OdeState<N>&, double)>& record) {
    detail::Dopri5<N> stepper(rhs);
    OdeStats stats;
    double t = t_grid.front();
    record(0, y, 0.0);
    double h = (t_grid.back() - t) * 1e-4;
    const double h_min = (t_grid.back() - t) * 1e-15;
    for (std::size_t ig = 1; ig < t_grid.size(); ++ig) {
        const double t_target = t_grid[ig];
        double err_at_target = 0.0;
        while (t < t_target) {
            bool clipped = false;
            if (t + h >= t_target) {
                h = t_target - t;
                clipped = true;
            }
            OdeState<N> y_new;
            double err = stepper.step(t, y, h, y_new, atol, rtol);
            if (err <= 1.0) {
                t = clipped ? t_target : t + h;
                y = y_new;
                ++stats.steps;
                stats.max_local_error = std::max(stats.max_local_error, err);
                err_at_target = err;
            } else {
                ++stats.rejected;
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
            if (h < h_min)
                throw StepFailure("adaptive step size underflow at t = " + std::to_string(t));
            if (stats.steps + stats.rejected > 20'000'000)
                throw StepFailure("step budget exhausted");
        }
        record(ig, y, err_at_target);
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Linear least squares with conditioning diagnostics.
// ---------------------------------------------------------------------------

struct LeastSquaresFit {
    std::vector<double> coeffs;
    double residual_rms = 0.0;   // rms of (A c - b)
    double condition = 0.0;      // condition number of the column-scaled design
};

/// Solves min |A c - b| by SVD; A is row-major, rows x cols.
LeastSquaresFit solve_least_squares(const std::vector<double>& a, std::size_t rows,
                                    std::size_t cols, std::span<const double> b);

// ---------------------------------------------------------------------------
// Deterministic RNG (independent of libstdc++ distribution internals).
// ---------------------------------------------------------------------------

/// splitmix64; identical streams on every platform for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Substream for worker `index`, derived deterministically from this seed.
    Rng substream(std::uint64_t index) const {
        Rng r(state_ ^ (0x6a09e667f3bcc909ULL + index * 0x3c6ef372fe94f82aULL));
        r.next_u64();
        return r;
    }

private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Misc
// ---------------------------------------------------------------------------

/// Serializes a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

std::vector<double> linspace(double lo, double hi, std::size_t n);
std::vector<double> geomspace(double lo, double hi, std::size_t n);

/// Volume of the unit round sphere S^n.
double sphere_volume(int n);

} // namespace pefill::num
