#include "pefill/ball_volume.hpp"

#include "pefill/errors.hpp"
#include "pefill/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace pefill {

double hyperbolic_ball_volume(int n, double r) {
    if (n < 1) throw UnsupportedDimension("hyperbolic_ball_volume: n >= 1");
    if (r < 0.0) throw Error("hyperbolic_ball_volume: r must be >= 0");
    if (r == 0.0) return 0.0;
    return num::sphere_volume(n) *
           num::integrate([n](double t) { return std::pow(std::sinh(t), n); }, 0.0, r);
}

namespace {

std::uint64_t run_chunk(std::uint64_t seed, std::uint64_t chunk_index,
                        std::uint64_t count, double length, double rho_max,
                        double d0, double r, int K) {
    num::Rng rng = num::Rng(seed).substream(chunk_index);
    const double sinh_rho_max = std::sinh(rho_max);
    const double cosh_r = std::cosh(r);
    const double cosh_d0 = std::cosh(d0);
    const double sinh_d0 = std::sinh(d0);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double t = length * rng.next_double();
        // radial density sinh^2(rho) cosh(rho): invert the sinh^3 CDF
        const double rho =
            std::asinh(std::cbrt(rng.next_double()) * sinh_rho_max);
        const double z = 2.0 * rng.next_double() - 1.0;
        rng.next_double(); // azimuth; unused since the center sits on the z-axis
        const double ch = std::cosh(rho), sh = std::sinh(rho);
        // cosh d(q, gamma^k c) = cosh(rho) cosh(d0) cosh(t + kL)
        //                        - sinh(rho) sinh(d0) <omega, omega_c>
        const double a = ch * cosh_d0;
        const double b = sh * sinh_d0 * z;
        for (int k = -K; k <= K; ++k) {
            if (a * std::cosh(t + k * length) - b <= cosh_r) {
                ++hits;
                break;
            }
        }
    }
    return hits;
}

} // namespace

BallVolumeEstimate quotient_ball_volume(double lambda, double center_distance,
                                        double r, std::uint64_t samples,
                                        std::uint64_t seed,
                                        const BallVolumeOptions& opts) {
    if (!(lambda > 0.0)) throw Error("quotient_ball_volume: lambda must be positive");
    if (center_distance < 0.0 || r <= 0.0)
        throw Error("quotient_ball_volume: need center_distance >= 0, r > 0");
    if (samples < 100000)
        throw Error("quotient_ball_volume: at least 1e5 samples required");

    const double length = 2.0 * M_PI * lambda;
    // Deck copies gamma^k c differ from sampled points by axis offset at least
    // (|k| - 1) * length, and hyperbolic distance dominates the axis offset.
    const int K =
        static_cast<int>(std::ceil((r + opts.deck_margin) / length)) + 1;
    if (K * length <= r)
        throw DeckTruncationTooSmall("deck cutoff K = " + std::to_string(K) +
                                     " does not clear radius " + std::to_string(r));

    const double rho_max = center_distance + r;
    const double total_measure =
        length * 4.0 * M_PI * std::pow(std::sinh(rho_max), 3) / 3.0;

    const std::uint64_t n_chunks = (samples + opts.chunk - 1) / opts.chunk;
    std::vector<std::uint64_t> counts(n_chunks, 0);
    unsigned n_threads = opts.threads > 0
                             ? static_cast<unsigned>(opts.threads)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<std::uint64_t>(n_threads, n_chunks);
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < n_threads; ++tid) {
        pool.emplace_back([&, tid] {
            for (std::uint64_t c = tid; c < n_chunks; c += n_threads) {
                const std::uint64_t count =
                    std::min<std::uint64_t>(opts.chunk, samples - c * opts.chunk);
                counts[c] = run_chunk(seed, c, count, length, rho_max,
                                      center_distance, r, K);
            }
        });
    }
    for (auto& th : pool) th.join();

    std::uint64_t hits = 0;
    for (std::uint64_t c : counts) hits += c; // fixed order, bit-reproducible

    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    BallVolumeEstimate est;
    est.lambda = lambda;
    est.center_distance = center_distance;
    est.radius = r;
    est.samples = samples;
    est.hits = hits;
    est.deck_truncation = K;
    est.mean = total_measure * p;
    est.std_error =
        total_measure * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return est;
}

} // namespace pefill
