#include "pefill/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cstdio>

namespace pefill::num {

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
    // Fornberg's recursion for finite-difference weights at x0.
    const int n = static_cast<int>(nodes.size()) - 1;
    const int m = order;
    std::vector<double> c((n + 1) * (m + 1), 0.0);
    auto C = [&](int i, int j) -> double& { return c[i * (m + 1) + j]; };
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    C(0, 0) = 1.0;
    for (int i = 1; i <= n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
                C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k)
                C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
            C(j, 0) = c4 * C(j, 0) / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = C(i, m);
    return w;
}

DerivativeSamples differentiate(std::span<const double> x, std::span<const double> f) {
    const std::size_t n = x.size();
    if (n < 5) throw InvalidProfile("differentiate: need at least 5 grid points");
    DerivativeSamples out;
    out.d1.resize(n);
    out.d2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = (i < 2) ? 0 : (i + 2 >= n ? n - 5 : i - 2);
        std::span<const double> nodes = x.subspan(lo, 5);
        auto w1 = fd_weights(x[i], nodes, 1);
        auto w2 = fd_weights(x[i], nodes, 2);
        double d1 = 0.0, d2 = 0.0;
        for (std::size_t k = 0; k < 5; ++k) {
            d1 += w1[k] * f[lo + k];
            d2 += w2[k] * f[lo + k];
        }
        out.d1[i] = d1;
        out.d2[i] = d2;
    }
    return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 15, rel_tol, &err);
    // The Kronrod error estimate is conservative and has an absolute floor of
    // roughly 3e-11 on short intervals, so the guard only has to catch genuine
    // non-convergence, not enforce the requested tolerance.
    double scale = std::max(std::abs(v), 1e-30);
    if (!(std::isfinite(v)) ||
        err > std::max(std::max(rel_tol * 1e5, 1e-8) * scale, 1e-10))
        throw QuadratureFailure("quadrature error estimate " + std::to_string(err) +
                                " too large for integral " + std::to_string(v));
    return v;
}

double newton_bracketed(const std::function<double(double)>& f,
                        const std::function<double(double)>& df,
                        double lo, double hi, double x0, double tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw Error("newton_bracketed: root not bracketed");
    double x = std::clamp(x0, lo, hi);
    for (int it = 0; it < 200; ++it) {
        double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0) == (fhi > 0))
            hi = x;
        else
            lo = x;
        double d = df(x);
        double x_new = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(x_new > lo && x_new < hi)) x_new = 0.5 * (lo + hi);
        double scale = std::max(1.0, std::abs(x));
        if (std::abs(x_new - x) < tol * scale) return x_new;
        x = x_new;
    }
    return x;
}

LeastSquaresFit solve_least_squares(const std::vector<double>& a, std::size_t rows,
                                    std::size_t cols, std::span<const double> b) {
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        rhs(static_cast<Eigen::Index>(i)) = b[i];
        for (std::size_t j = 0; j < cols; ++j)
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a[i * cols + j];
    }
    // Scale columns to unit norm so the condition number reflects the basis, not units.
    Eigen::VectorXd scale(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double s = A.col(static_cast<Eigen::Index>(j)).norm();
        scale(static_cast<Eigen::Index>(j)) = (s > 0) ? s : 1.0;
        A.col(static_cast<Eigen::Index>(j)) /= scale(static_cast<Eigen::Index>(j));
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd c = svd.solve(rhs);
    LeastSquaresFit fit;
    fit.condition = svd.singularValues()(0) /
                    svd.singularValues()(svd.singularValues().size() - 1);
    Eigen::VectorXd res = A * c - rhs;
    fit.residual_rms = std::sqrt(res.squaredNorm() / static_cast<double>(rows));
    fit.coeffs.resize(cols);
    for (std::size_t j = 0; j < cols; ++j)
        fit.coeffs[j] = c(static_cast<Eigen::Index>(j)) / scale(static_cast<Eigen::Index>(j));
    return fit;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::vector<double> geomspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

double sphere_volume(int n) {
    // Vol(S^n) = 2 pi^{(n+1)/2} / Gamma((n+1)/2)
    double half = 0.5 * (n + 1);
    return 2.0 * std::pow(M_PI, half) / boost::math::tgamma(half);
}

} // namespace pefill::num
