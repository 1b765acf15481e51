#pragma once

#include "pefill/metric_profile.hpp"
#include "pefill/numerics.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace pefill {

using Rational = boost::multiprecision::cpp_rational;

/// Exact Taylor coefficients a_1..a_M of the sphere warping factor F at the
/// cap, F(r) = sum_m a_m r^m / m!, a_m = 0 for even m, a_1 = 1.
struct SeriesSeed {
    int n = 3;
    int order = 0;                 // M, odd
    std::vector<Rational> coeffs;  // coeffs[m] = a_m, index 0 unused

    double eval(double r) const;        // F(r) from the truncated series
    double eval_derivative(double r) const;
    /// Magnitude of the last retained series term at r (truncation estimate).
    double truncation_estimate(double r) const;
};

/// Solves the cap recursion for the reduced Einstein equation
/// (n-1) F F'' + (F')^2 - 1 - n F^2 = 0 with F(0) = 0, F'(0) = 1,
/// in exact rational arithmetic. All odd coefficients come out equal to 1
/// (the series of sinh), which is what the uniqueness statement asserts.
SeriesSeed series_seed(int n, int order_m);

/// Exact check of sum_{k=2}^{2Q-1} (-1)^k / (k! (2Q-k)!) = (2Q-2)/(2Q)!
/// for all 2 <= Q <= q_max.
bool combinatorial_identity_check(int q_max);

/// The same alternating sum over the full row k = 0..2Q (vanishes exactly).
Rational alternating_row_sum(int q);

struct OdeResidualTriple {
    std::vector<double> eq1, eq2, eq3; // residuals of the three Einstein ODEs
    double max_abs = 0.0;
};

/// Residuals of the three displayed Einstein equations on a profile grid,
/// cap points evaluated by the series/Taylor fallback of the curvature engine.
OdeResidualTriple ode_residuals(const MetricProfile& profile, int n);

struct IntegrateOptions {
    double series_handoff = 1e-2; // r0: series below, integrator above
    std::size_t grid_points = 1001;
};

struct ProfileSolution {
    MetricProfile profile;           // with derivative columns from the ODE closure
    OdeResidualTriple residuals;     // at every grid point
    std::vector<double> local_error; // integrator scaled local error estimates
    num::OdeStats stats;
};

/// Integrates the reduced system for (F, G) from a series-evaluated start at
/// r0 with G(0) = g0, G'(0) = 0, out to r_max, local tolerance tol.
/// The second displayed equation is used as the G closure; the other two are
/// demoted to monitored constraints and reported as residuals.
ProfileSolution integrate_profiles(int n, const SeriesSeed& seed, double g0,
                                   double r_max, double tol,
                                   const IntegrateOptions& opts = {});

} // namespace pefill
