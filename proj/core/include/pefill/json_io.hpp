#pragma once

#include "pefill/ball_volume.hpp"
#include "pefill/filling_report.hpp"
#include "pefill/renormalized_volume.hpp"
#include "pefill/yamabe.hpp"

#include <json.hpp>

namespace pefill {

inline void to_json(nlohmann::json& j, const GateVerdict& v) {
    j = {{"nonpositive_curvature", v.nonpositive_curvature},
         {"max_sectional", v.max_sectional},
         {"sec_pinching", v.sec_pinching},
         {"sup_weyl", v.sup_weyl},
         {"sup_weyl_pass", v.sup_weyl_pass},
         {"weyl_energy", v.weyl_energy},
         {"pinching_ratio", v.pinching_ratio},
         {"pinching_pass", v.pinching_pass}};
    if (v.vol_comparison_pass)
        j["vol_comparison_pass"] = *v.vol_comparison_pass;
    else
        j["vol_comparison_pass"] = nullptr;
}

inline void to_json(nlohmann::json& j, const SchwarzschildParams& p) {
    j = {{"n", p.n},
         {"mass", p.mass},
         {"omega_n", p.omega_n},
         {"s_h", p.s_h},
         {"lambda", p.lambda}};
}

inline void to_json(nlohmann::json& j, const FillingEntry& e) {
    j = {{"kind", to_string(e.kind)},
         {"params", e.params},
         {"v_ren", e.v_ren},
         {"v_ren_rank", e.v_ren_rank},
         {"weyl_energy", e.weyl_energy},
         {"einstein_residual", e.einstein_residual},
         {"gates", e.gates}};
}

inline void to_json(nlohmann::json& j, const FillingReport& r) {
    j = {{"n", r.n},
         {"lambda", r.lambda},
         {"yamabe_value", r.yamabe_value},
         {"entries", r.entries},
         {"max_v_ren_index", r.max_v_ren_index}};
}

inline void to_json(nlohmann::json& j, const VolumeExpansion& e) {
    j = {{"epsilons", e.epsilons},
         {"volumes", e.volumes},
         {"exponents", e.exponents},
         {"coefficients", e.coefficients},
         {"log_coefficient", e.log_coefficient},
         {"v_ren", e.v_ren},
         {"uncertainty", e.uncertainty},
         {"residual", e.residual},
         {"condition", e.condition}};
}

inline void to_json(nlohmann::json& j, const GaussBonnetReport& r) {
    j = {{"chi", r.chi},
         {"lhs", r.lhs},
         {"weyl_integral", r.weyl_integral},
         {"v_ren", r.v_ren},
         {"v_ren_uncertainty", r.v_ren_uncertainty},
         {"defect", r.defect}};
}

inline void to_json(nlohmann::json& j, const YamabeResult& y) {
    j = {{"n", y.n},
         {"lambda", y.lambda},
         {"grid", y.grid},
         {"value", y.value},
         {"value_coarse", y.value_coarse},
         {"value_fine", y.value_fine},
         {"y_const", y.y_const},
         {"y_sphere", y.y_sphere},
         {"minimizer", y.minimizer},
         {"symmetry_reduced_upper_bound", y.symmetry_reduced}};
}

inline void to_json(nlohmann::json& j, const BallVolumeEstimate& b) {
    j = {{"lambda", b.lambda},
         {"center_distance", b.center_distance},
         {"radius", b.radius},
         {"mean", b.mean},
         {"std_error", b.std_error},
         {"samples", b.samples},
         {"hits", b.hits},
         {"deck_truncation", b.deck_truncation}};
}

inline void to_json(nlohmann::json& j, const VerifyCheck& c) {
    j = {{"name", c.name},
         {"measured", c.measured},
         {"tolerance", c.tolerance},
         {"pass", c.pass}};
}

inline void to_json(nlohmann::json& j, const VerifySummary& s) {
    j = {{"checks", s.checks}, {"all_pass", s.all_pass}};
}

} // namespace pefill
