#pragma once

#include "pefill/curvature.hpp"

#include <optional>

namespace pefill {

/// Thresholds for the rigidity-theorem hypotheses. The source results leave
/// lambda_0, delta, eta existential, so they are user-supplied knobs.
struct GateConfig {
    double sec_tol = 1e-10; // slack for the nonpositivity test
    double delta = 1e-3;    // Weyl-energy pinching threshold
    double eta = 0.0;       // sup-Weyl threshold; <= 0 means report-only
    double yamabe_value = 0.0; // boundary Yamabe constant Y for the pinching ratio
};

/// Hypothesis verdicts only; the theorems' conclusions quantify over all
/// fillings and are not re-derived from a single example.
struct GateVerdict {
    bool nonpositive_curvature = false;
    double max_sectional = 0.0;
    double sec_pinching = 0.0; // sup |sec + 1|
    double sup_weyl = 0.0;     // sup sqrt(|W|^2), pair norm
    bool sup_weyl_pass = true;
    double weyl_energy = 0.0;
    double pinching_ratio = 0.0; // weyl_energy / Y^{n/2}
    bool pinching_pass = false;
    /// Set by the caller after a Monte-Carlo run; only meaningful for the
    /// hyperbolic filling, where the comparison theorem applies.
    std::optional<bool> vol_comparison_pass;
};

/// Evaluates the hypotheses on a curvature report of an exported profile.
/// weyl_energy is supplied by the caller (closed form or quadrature).
GateVerdict theorem_gates(const CurvatureReport& curv, double weyl_energy,
                          const GateConfig& config = {});

} // namespace pefill
