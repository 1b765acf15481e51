#pragma once

#include "pefill/curvature.hpp"

#include <cstdint>
#include <string>

namespace pefill {

/// Every tolerance, grid size, seed and convention in one place, so any table
/// the tools emit can be reproduced from a single file.
struct Config {
    int n = 3;
    double omega_n = 2.0;
    WeylNorm weyl_norm = WeylNorm::PairSum;

    // curvature engine
    double cap_window = 1e-3;
    double cap_fit_window = 0.25;
    double einstein_tol = 1e-8;

    // ODE verification
    int series_order = 31;
    double ode_tol = 1e-10;
    double series_handoff = 1e-2;
    double ode_r_max = 10.0;

    // profile export
    std::size_t profile_points = 801;
    double profile_r_max = 10.0;
    double quad_rel_tol = 1e-13;

    // renormalized volume
    double eps_min = 0.02;
    double eps_max = 0.2;
    std::size_t eps_points = 12;
    double fit_max_condition = 1e10;
    double fit_stability_tol = 1e-3;
    double gb_quad_rel_tol = 1e-12;
    double gb_s_cut_factor = 100.0;

    // Yamabe
    std::size_t yamabe_grid = 256;

    // Monte-Carlo volume comparison
    std::uint64_t mc_samples = 1000000;
    std::uint64_t mc_seed = 20260823;
    int mc_threads = 0;

    // theorem gates
    double gate_sec_tol = 1e-10;
    double gate_delta = 1e-3;
    double gate_eta = 0.0;

    CurvatureOptions curvature_options() const;

    /// Serializes as `key = value` lines in a fixed order.
    std::string dump() const;
};

/// Parses `key = value` lines; '#' starts a comment; blank lines ignored.
/// Unknown keys and malformed values are errors.
Config parse_config(const std::string& text, Config base = {});
Config load_config(const std::string& path, Config base = {});

/// Applies a single `key=value` override (CLI flag form).
void apply_override(Config& cfg, const std::string& key, const std::string& value);

} // namespace pefill
