#pragma once

#include "pefill/metric_profile.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pefill {

/// Parameters of the AdS-Schwarzschild filling of (S^1 x S^{n-1}, [g_lambda]).
/// Invariants: V(s_h) = 0, lambda * V'(s_h)/2 = 1, V > 0 for s > s_h.
/// m = 0 is the hyperbolic degeneration (s_h = 0, lambda free).
struct SchwarzschildParams {
    int n = 3;
    double mass = 0.0;
    double omega_n = 2.0; // mass normalization; derived quantities based on the
                          // horizon relation are independent of it
    double s_h = 0.0;
    double lambda = 0.0;
};

struct PotentialValue {
    double v, dv, ddv;
};

/// V(s) = 1 + s^2 - omega_n m / s^{n-2} and its first two derivatives.
PotentialValue potential(const SchwarzschildParams& params, double s);

/// lambda from the smooth-closure condition lambda^{-1} = V'(s_h)/2,
/// reduced with the horizon relation: lambda = 2 s_h / (n s_h^2 + n - 2).
double lambda_from_horizon(int n, double s_h);

/// Largest admissible lambda for dimension n (the double-root point).
double lambda_max(int n);
/// Horizon radius at the double root, s* = sqrt((n-2)/n).
double horizon_at_lambda_max(int n);

/// Solves lambda (n s^2 + n - 2) = 2 s. Returns {} above lambda_max, the
/// double root at lambda_max, else both roots with s_plus < s_minus
/// (s_plus -> 0 and s_minus -> +inf as lambda -> 0).
struct HorizonBranches {
    std::optional<double> s_plus;
    std::optional<double> s_minus;
};
HorizonBranches horizons_from_lambda(int n, double lambda);

/// m from the horizon relation omega_n m = s_h^{n-2}(1 + s_h^2).
double mass_from_horizon(int n, double s_h, double omega_n = 2.0);

/// Assembles consistent parameters from (n, s_h).
SchwarzschildParams params_from_horizon(int n, double s_h, double omega_n = 2.0);

/// Renormalized volume (8 pi^2/3) s_h^2 (1 - s_h^2) / (3 s_h^2 + 1); n = 3 only.
double renormalized_volume_closed_form(int n, double s_h);

/// Weyl energy 16 pi^2 chi/2 ... i.e. 8 pi^2 chi - 6 V(s_h)
/// = 16 pi^2 (1 + s_h^2)^2 / (3 s_h^2 + 1) for chi = 2; n = 3 only.
double weyl_energy_closed_form(int n, double s_h, double chi = 2.0);

/// Distance from the horizon along the radial geodesic, r(s) = int_{s_h}^{s} dv/sqrt(V),
/// with the sqrt-singularity at the horizon removed by substitution.
double radial_distance(const SchwarzschildParams& params, double s, double rel_tol = 1e-13);

/// Inverse of radial_distance.
double radius_from_distance(const SchwarzschildParams& params, double r, double rel_tol = 1e-13);

struct ExportOptions {
    std::size_t grid_points = 801;
    double quad_rel_tol = 1e-13;
};

/// Exports the metric profile in geodesic coordinates: F(r) = s(r),
/// G(r) = lambda sqrt(V(s(r))), circle-cap at the horizon (sphere-cap for m = 0).
/// Derivative columns are the closed forms in s, so the export is exact up to
/// the accuracy of s(r).
MetricProfile export_profile(const SchwarzschildParams& params, double r_max,
                             const ExportOptions& opts = {});

} // namespace pefill
