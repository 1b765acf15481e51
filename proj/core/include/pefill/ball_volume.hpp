#pragma once

#include <cstdint>

namespace pefill {

/// Volume of the radius-r ball in hyperbolic space H^{n+1},
/// Vol(S^n) int_0^r sinh^n t dt.
double hyperbolic_ball_volume(int n, double r);

struct BallVolumeEstimate {
    double lambda = 0.0;
    double center_distance = 0.0; // from the core geodesic
    double radius = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    int deck_truncation = 0; // |k| <= K copies tested
};

struct BallVolumeOptions {
    std::uint64_t chunk = 1u << 16; // per-substream sample block
    double deck_margin = 0.5;
    int threads = 0; // 0: hardware concurrency
};

/// Monte-Carlo volume of B_r(p) in the hyperbolic quotient with core geodesic
/// of length 2 pi lambda (n = 3: quotient of H^4 by a loxodromic translation).
/// Fermi-coordinate sampling around the core axis; membership tested in the
/// hyperboloid model against all deck copies |k| <= K, with K set by the
/// analytic separation bound. Deterministic for a fixed seed: per-chunk RNG
/// substreams and integer hit counts reduced in chunk order.
BallVolumeEstimate quotient_ball_volume(double lambda, double center_distance,
                                        double r, std::uint64_t samples,
                                        std::uint64_t seed,
                                        const BallVolumeOptions& opts = {});

} // namespace pefill
