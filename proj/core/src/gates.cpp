#include "pefill/gates.hpp"

#include "pefill/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pefill {

GateVerdict theorem_gates(const CurvatureReport& curv, double weyl_energy,
                          const GateConfig& config) {
    if (!curv.has_weyl)
        throw Error("theorem_gates: curvature report has no Weyl data");
    GateVerdict v;
    v.weyl_energy = weyl_energy;

    double max_sec = -std::numeric_limits<double>::infinity();
    double pinch = 0.0;
    for (std::size_t i = 0; i < curv.size(); ++i) {
        for (double s : {curv.sec_rX[i], curv.sec_rT[i], curv.sec_XX[i], curv.sec_XT[i]}) {
            max_sec = std::max(max_sec, s);
            pinch = std::max(pinch, std::abs(s + 1.0));
        }
    }
    v.max_sectional = max_sec;
    v.sec_pinching = pinch;
    v.nonpositive_curvature = max_sec <= config.sec_tol;

    double sup_w2 = 0.0;
    for (double w : curv.weyl_norm_sq) sup_w2 = std::max(sup_w2, w);
    // sup |W| is stated against the pair norm.
    if (curv.weyl_convention == WeylNorm::AllIndices) sup_w2 /= 4.0;
    v.sup_weyl = std::sqrt(sup_w2);
    v.sup_weyl_pass = config.eta <= 0.0 || v.sup_weyl <= config.eta;

    if (config.yamabe_value > 0.0) {
        const double y_pow = std::pow(config.yamabe_value, curv.n / 2.0);
        v.pinching_ratio = weyl_energy / y_pow;
        v.pinching_pass = weyl_energy <= config.delta * y_pow;
    }
    return v;
}

} // namespace pefill
