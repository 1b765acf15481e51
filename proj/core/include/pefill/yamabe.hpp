#pragma once

#include <vector>

namespace pefill {

/// Yamabe constant of the round sphere, n(n-1) Vol(S^n)^{2/n}.
double yamabe_sphere(int n);

/// Yamabe quotient of the constant test function on S^1(2 pi lambda) x S^{n-1},
/// (n-1)(n-2) (2 pi lambda Vol(S^{n-1}))^{2/n}.
double yamabe_constant_test(int n, double lambda);

struct YamabeResult {
    int n = 3;
    double lambda = 1.0;
    std::size_t grid = 0;     // N of the coarse grid; the fine pass uses 2N
    double value = 0.0;       // Richardson-extrapolated minimum
    double value_coarse = 0.0;
    double value_fine = 0.0;
    double y_const = 0.0;     // quotient at u = 1
    double y_sphere = 0.0;
    std::vector<double> minimizer; // optimal u on the fine grid
    /// The infimum is taken over circle-dependent test functions u = u(t)
    /// only; the result is an upper bound for the full conformal class.
    bool symmetry_reduced = true;
};

struct YamabeOptions {
    std::size_t max_iterations = 200000;
    double gradient_tol = 1e-10; // on the projected gradient, relative to Y
    double initial_step = 0.1;
};

/// Minimizes the Yamabe quotient over positive periodic u(t) on the circle of
/// length 2 pi lambda by projected gradient descent with backtracking, started
/// from both the constant function and a localized bump; the smaller result is
/// kept. Throws NonConvergence if neither descent meets the gradient tolerance.
YamabeResult yamabe_product(int n, double lambda, std::size_t grid_n = 256,
                            const YamabeOptions& opts = {});

} // namespace pefill
