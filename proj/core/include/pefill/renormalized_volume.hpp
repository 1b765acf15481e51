#pragma once

#include "pefill/curvature.hpp"
#include "pefill/schwarzschild.hpp"

#include <vector>

namespace pefill {

/// Geodesic compactification chart x = C e^{-r} for a cohomogeneity-one
/// filling. |dx|_{x^2 g} = 1 holds identically for this form; C is fixed so
/// that x^2 g restricts to the normalized product on the boundary
/// (s * x -> 1, equivalently C = omega_0 = 2 in the hyperbolic case).
struct CompactificationChart {
    enum class Source { Hyperbolic, Schwarzschild };
    Source source = Source::Hyperbolic;
    int n = 3;
    double lambda = 1.0;
    SchwarzschildParams params; // Schwarzschild source only
    double C = 2.0;             // normalizing constant (omega_0 for hyperbolic)
    double x_max = 2.0;         // chart valid on 0 < x <= x_max

    double x_from_s(double s) const;
    double s_from_x(double x) const;
    /// Max deviation of the x^2 g boundary components (sphere coefficient,
    /// circle coefficient / lambda^2) from 1 at the given x.
    double boundary_defect(double x) const;
};

struct ChartOptions {
    double quad_rel_tol = 1e-13;
    /// Relative stabilization demanded of C when the tail anchor is doubled.
    double c_stability_tol = 1e-9;
};

CompactificationChart build_chart(int n, double lambda,
                                  const ChartOptions& opts = {}); // hyperbolic
CompactificationChart build_chart(const SchwarzschildParams& params,
                                  const ChartOptions& opts = {});

/// Vol_g({x >= eps}). Hyperbolic source: quadrature of the volume density in
/// x. Schwarzschild source: elementary antiderivative given s(eps).
double regularized_volume(const CompactificationChart& chart, double eps,
                          double quad_rel_tol = 1e-13);

struct VolumeExpansion {
    std::vector<double> epsilons;     // decreasing
    std::vector<double> volumes;      // Vol(Omega_eps)
    std::vector<double> exponents;    // basis eps^k; 0 entry is the constant
    std::vector<double> coefficients; // fitted c_k, aligned with exponents
    double log_coefficient = 0.0;     // even-n log(1/eps) term, else 0
    double v_ren = 0.0;
    double uncertainty = 0.0;         // max leave-one-out change of v_ren
    double residual = 0.0;            // max relative misfit
    double condition = 0.0;           // of the scaled design matrix
};

struct ExtractOptions {
    double quad_rel_tol = 1e-13;
    double max_condition = 1e10;
    /// Leave-one-out spread above this throws UnstableExtraction.
    double stability_tol = 1e-3;
};

/// Default 12-point geometric grid from 0.2 down to 0.02.
std::vector<double> default_eps_grid();

/// Least-squares fit of Vol(Omega_eps) over the divergent basis
/// {eps^{-n}, eps^{-n+2}, .., eps^{-1}, 1} (odd n; log(1/eps) added for even
/// n), plus the subleading powers {eps, eps^2, eps^3} so the constant term is
/// not polluted by the boundary stress contributions. v_ren is the constant.
VolumeExpansion extract_renormalized_volume(const CompactificationChart& chart,
                                            std::vector<double> eps_grid = {},
                                            const ExtractOptions& opts = {});

struct GaussBonnetReport {
    double chi = 0.0;
    double lhs = 0.0;           // 8 pi^2 chi
    double weyl_integral = 0.0; // pair-norm quadrature
    double v_ren = 0.0;
    double v_ren_uncertainty = 0.0;
    double defect = 0.0; // |lhs - weyl_integral - 6 v_ren|
};

struct GaussBonnetOptions {
    WeylNorm weyl_norm = WeylNorm::PairSum;
    double quad_rel_tol = 1e-12;
    double s_cut_factor = 100.0; // quadrature cut at s_cut_factor * max(1, s_h)
    /// Auto: fit extraction for Schwarzschild, the exact zero of the
    /// closed-form antiderivative for hyperbolic.
    enum class VrenSource { Auto, Fit, ClosedForm };
    VrenSource v_ren_source = VrenSource::Auto;
    ExtractOptions extract = {};
};

/// int |W|^2 dvol over the filling by quadrature of the pointwise norm
/// against the analytic radial data (closed-form tail for n = 3).
double weyl_energy_quadrature(const SchwarzschildParams& params,
                              const GaussBonnetOptions& opts = {});

/// 8 pi^2 chi = int |W|^2 + 6 V for the 4-dimensional (n = 3) fillings.
/// The Weyl integral is the quadrature of the curvature-engine pair-norm
/// density, with the closed-form tail beyond the cut.
GaussBonnetReport gauss_bonnet_check(const SchwarzschildParams& params,
                                     double chi = 2.0,
                                     const GaussBonnetOptions& opts = {});
/// Hyperbolic filling, chi(S^1 x D^3) = 0.
GaussBonnetReport gauss_bonnet_check_hyperbolic(double lambda, double chi = 0.0,
                                                const GaussBonnetOptions& opts = {});

} // namespace pefill
