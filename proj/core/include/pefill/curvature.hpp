#pragma once

#include "pefill/metric_profile.hpp"

#include <vector>

namespace pefill {

/// |W|^2 convention. PairSum adds squared components over unordered 2-plane
/// pairs; AllIndices is the full tensor norm, exactly 4x larger. PairSum is
/// the convention under which the four-dimensional Gauss-Bonnet identity and
/// the closed-form renormalized volume of the Schwarzschild family agree.
enum class WeylNorm { PairSum, AllIndices };

struct CurvatureOptions {
    double cap_window = 1e-3;   // below this radius, cap-series evaluation
    double cap_fit_window = 0.25;
    bool use_cap_series = true; // disabling makes cap points hard errors
    double einstein_tol = 1e-8; // gate for the Einstein Weyl shortcut
    WeylNorm weyl_norm = WeylNorm::PairSum;
};

/// Per-grid-point curvature data in the g-orthonormal frame {dr, X_i, T}.
/// Off-diagonal curvature components vanish identically for this ansatz.
struct CurvatureReport {
    int n = 3;
    std::vector<double> r;

    // Sectional curvatures of the four plane families.
    std::vector<double> sec_rX, sec_rT, sec_XX, sec_XT;

    // Ricci diagonal, scalar curvature, Einstein residual.
    std::vector<double> ric_rr, ric_XX, ric_TT, scal;
    std::vector<double> einstein_residual;
    double einstein_target = 0.0;
    double max_einstein_residual = 0.0;
    bool has_ricci = false;

    // Diagonal Weyl components per plane and pointwise |W|^2.
    std::vector<double> weyl_rX, weyl_rT, weyl_XX, weyl_XT;
    std::vector<double> weyl_norm_sq;
    WeylNorm weyl_convention = WeylNorm::PairSum;
    bool has_weyl = false;

    std::size_t size() const { return r.size(); }
};

/// Samples the four sectional-curvature families on the profile grid.
CurvatureReport sectional_curvatures(const MetricProfile& profile,
                                     const CurvatureOptions& opts = {});

/// Adds the Ricci diagonal, scalar curvature and the Einstein residual
/// max_a |Ric_aa - target| (orthonormal frame, so g_aa = 1).
/// Default target is -n.
CurvatureReport ricci_and_residual(const MetricProfile& profile,
                                   double target_einstein_const,
                                   const CurvatureOptions& opts = {});
CurvatureReport ricci_and_residual(const MetricProfile& profile,
                                   const CurvatureOptions& opts = {});

/// Fills Weyl fields via the Einstein shortcut W_abab = R_abab + 1
/// (valid only when the Einstein residual passes opts.einstein_tol, with
/// Einstein constant -n). Throws EinsteinResidualTooLarge otherwise.
CurvatureReport weyl_diagonal(CurvatureReport report, const CurvatureOptions& opts = {});

/// Full Kulkarni-Nomizu assembly of the Weyl diagonal from Riemann, Ricci and
/// scalar curvature. Valid for non-Einstein input; also serves as the
/// independent oracle for the shortcut above.
CurvatureReport weyl_kulkarni_nomizu(CurvatureReport report,
                                     const CurvatureOptions& opts = {});

/// Convenience: sectional + Ricci + Weyl (shortcut when Einstein, KN otherwise).
CurvatureReport full_curvature_report(const MetricProfile& profile,
                                      const CurvatureOptions& opts = {});

/// Pointwise sectional curvatures from frame data at a single regular point
/// (no cap handling); used for quadratures against analytic profiles.
struct SectionalPoint {
    double rX, rT, XX, XT;
};
SectionalPoint sectional_at(double F, double dF, double ddF,
                            double G, double dG, double ddG);

/// Pointwise |W|^2 for an Einstein profile point (shortcut route).
double weyl_norm_sq_at(int n, const SectionalPoint& sec, WeylNorm convention);

} // namespace pefill
