#include "pefill/einstein_ode.hpp"

#include "pefill/curvature.hpp"
#include "pefill/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pefill {

namespace {

Rational factorial(int k) {
    Rational f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

double SeriesSeed::eval(double r) const {
    // sum a_m r^m / m!, Horner in r^2 over the odd terms.
    double acc = 0.0;
    double term = r; // r^m / m!
    for (int m = 1; m <= order; m += 2) {
        acc += static_cast<double>(coeffs[m]) * term;
        term *= r * r / ((m + 1.0) * (m + 2.0));
    }
    return acc;
}

double SeriesSeed::eval_derivative(double r) const {
    double acc = 0.0;
    double term = 1.0; // r^{m-1} / (m-1)!
    for (int m = 1; m <= order; m += 2) {
        acc += static_cast<double>(coeffs[m]) * term;
        term *= r * r / (m * (m + 1.0));
    }
    return acc;
}

double SeriesSeed::truncation_estimate(double r) const {
    int m = order;
    double term = std::pow(r, m);
    for (int i = 2; i <= m; ++i) term /= i;
    return std::abs(static_cast<double>(coeffs[m])) * term;
}

SeriesSeed series_seed(int n, int order_m) {
    if (n < 3) throw Error("series_seed: n must be >= 3");
    if (order_m < 1) throw Error("series_seed: order must be >= 1");
    SeriesSeed seed;
    seed.n = n;
    seed.order = order_m;
    seed.coeffs.assign(order_m + 1, Rational(0));
    seed.coeffs[1] = 1; // cap slope
    if (order_m >= 3) {
        // Order-r^2 balance of the reduced equation: n a_3 = n.
        seed.coeffs[3] = Rational(n) / Rational(n);
    }
    // For Q >= 2, compare coefficients of r^{2Q} in the reduced equation and
    // solve for a_{2Q+1} from the lower coefficients.
    for (int Q = 2; 2 * Q + 1 <= order_m; ++Q) {
        Rational s1 = 0, s2 = 0, s3 = 0;
        for (int m = 1; m <= Q - 1; ++m) {
            s1 += seed.coeffs[2 * m + 1] / factorial(2 * m + 1) *
                  seed.coeffs[2 * Q + 1 - 2 * m] / factorial(2 * Q - 1 - 2 * m);
            s2 += seed.coeffs[2 * m + 1] / factorial(2 * m) *
                  seed.coeffs[2 * Q - 2 * m + 1] / factorial(2 * Q - 2 * m);
            s3 += seed.coeffs[2 * m + 1] / factorial(2 * m + 1) *
                  seed.coeffs[2 * Q - 2 * m - 1] / factorial(2 * Q - 2 * m - 1);
        }
        s3 += seed.coeffs[1] * seed.coeffs[2 * Q - 1] / factorial(2 * Q - 1);
        Rational lead = Rational(2 * Q * (n - 1) + 2) / factorial(2 * Q);
        seed.coeffs[2 * Q + 1] = -((n - 1) * s1 + s2 - n * s3) / lead;
    }
    return seed;
}

Rational alternating_row_sum(int q) {
    Rational sum = 0;
    for (int k = 0; k <= 2 * q; ++k) {
        Rational term = Rational(1) / (factorial(k) * factorial(2 * q - k));
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

bool combinatorial_identity_check(int q_max) {
    if (q_max < 2) throw Error("combinatorial_identity_check: Q_max must be >= 2");
    for (int q = 2; q <= q_max; ++q) {
        Rational lhs = 0;
        for (int k = 2; k <= 2 * q - 1; ++k) {
            Rational term = Rational(1) / (factorial(k) * factorial(2 * q - k));
            lhs += (k % 2 == 0) ? term : -term;
        }
        Rational rhs = Rational(2 * q - 2) / factorial(2 * q);
        if (lhs != rhs) return false;
    }
    return true;
}

OdeResidualTriple ode_residuals(const MetricProfile& profile, int n) {
    MetricProfile p = profile;
    p.n = n;
    CurvatureReport sec = sectional_curvatures(p);
    OdeResidualTriple res;
    const std::size_t m = sec.size();
    res.eq1.resize(m);
    res.eq2.resize(m);
    res.eq3.resize(m);
    // The displayed system, written through the sectional-curvature pieces:
    //   F''/F = -sec_rX, (F'^2 - 1)/F^2 = -sec_XX,
    //   (F'/F)(G'/G) = -sec_XT, G''/G = -sec_rT.
    for (std::size_t i = 0; i < m; ++i) {
        res.eq1[i] = -((n - 2) * sec.sec_rX[i] + sec.sec_XX[i] + sec.sec_XT[i]) - n;
        res.eq2[i] = -((n - 1) * sec.sec_rX[i] + sec.sec_rT[i]) - n;
        res.eq3[i] = -(sec.sec_rT[i] + (n - 1) * sec.sec_XT[i]) - n;
        res.max_abs = std::max({res.max_abs, std::abs(res.eq1[i]),
                                std::abs(res.eq2[i]), std::abs(res.eq3[i])});
    }
    return res;
}

namespace {

// G on [0, r0] from its even Taylor series. The coefficient source is
// G''/G = n - (n-1) F''/F with F''/F expanded by exact series division.
struct CapSeries {
    std::vector<double> phi; // even series of G''/G: phi[j] is the r^{2j} coeff
    std::vector<double> g;   // even series of G/g0: g[j] coeff of r^{2j}

    CapSeries(const SeriesSeed& seed, int n_terms) {
        const int n = seed.n;
        // F = r A(r^2), F'' = r B(r^2): A_j = a_{2j+1}/(2j+1)!, B_j = a_{2j+3}/(2j+1)!.
        std::vector<Rational> A(n_terms), B(n_terms);
        for (int j = 0; j < n_terms; ++j) {
            A[j] = (2 * j + 1 <= seed.order) ? seed.coeffs[2 * j + 1] / factorial(2 * j + 1)
                                             : Rational(0);
            B[j] = (2 * j + 3 <= seed.order) ? seed.coeffs[2 * j + 3] / factorial(2 * j + 1)
                                             : Rational(0);
        }
        std::vector<Rational> C(n_terms); // F''/F = B/A
        for (int j = 0; j < n_terms; ++j) {
            Rational acc = B[j];
            for (int i = 1; i <= j; ++i) acc -= A[i] * C[j - i];
            C[j] = acc / A[0];
        }
        phi.resize(n_terms);
        for (int j = 0; j < n_terms; ++j)
            phi[j] = (j == 0 ? n : 0.0) - (n - 1) * static_cast<double>(C[j]);
        // G'' = phi G, G(0) = 1, G'(0) = 0 (scaled by g0 later):
        g.assign(n_terms + 1, 0.0);
        g[0] = 1.0;
        for (int j = 0; j + 1 <= n_terms; ++j) {
            double acc = 0.0;
            for (int i = 0; i <= j && i < n_terms; ++i) acc += phi[i] * g[j - i];
            g[j + 1] = acc / ((2.0 * j + 2.0) * (2.0 * j + 1.0));
        }
    }

    double eval_g(double r) const {
        double acc = 0.0, r2 = r * r, p = 1.0;
        for (double c : g) {
            acc += c * p;
            p *= r2;
        }
        return acc;
    }
    double eval_dg(double r) const {
        double acc = 0.0, r2 = r * r, p = r;
        for (std::size_t j = 1; j < g.size(); ++j) {
            acc += 2.0 * static_cast<double>(j) * g[j] * p;
            p *= r2;
        }
        return acc;
    }
    double eval_phi(double r) const {
        double acc = 0.0, r2 = r * r, p = 1.0;
        for (double c : phi) {
            acc += c * p;
            p *= r2;
        }
        return acc;
    }
};

} // namespace

ProfileSolution integrate_profiles(int n, const SeriesSeed& seed, double g0,
                                   double r_max, double tol,
                                   const IntegrateOptions& opts) {
    if (!(g0 > 0)) throw Error("integrate_profiles: G(0) must be positive");
    if (seed.n != n) throw Error("integrate_profiles: seed dimension mismatch");
    const double r0 = opts.series_handoff;
    if (seed.truncation_estimate(r0) > tol / 10.0)
        throw SeedOrderTooLow("series truncation at the handoff radius exceeds tol/10");

    ProfileSolution sol;
    MetricProfile& p = sol.profile;
    p.n = n;
    p.cap_kind = CapKind::Sphere;
    p.cap_slope = 1.0;
    p.r = num::linspace(0.0, r_max, opts.grid_points);

    const std::size_t m = p.r.size();
    p.F.resize(m);
    p.G.resize(m);
    p.dF.resize(m);
    p.dG.resize(m);
    p.ddF.resize(m);
    p.ddG.resize(m);
    sol.local_error.assign(m, 0.0);
    sol.residuals.eq1.assign(m, 0.0);
    sol.residuals.eq2.assign(m, 0.0);
    sol.residuals.eq3.assign(m, 0.0);

    CapSeries cap(seed, std::max(8, seed.order / 2 + 2));

    auto ddF_closure = [n](double F, double dF) {
        return (1.0 + n * F * F - dF * dF) / ((n - 1.0) * F);
    };

    auto fill_point = [&](std::size_t i, double F, double dF, double G, double dG) {
        const double ri = p.r[i];
        p.F[i] = F;
        p.dF[i] = dF;
        p.G[i] = G;
        p.dG[i] = dG;
        if (ri == 0.0) {
            p.ddF[i] = 0.0;
            p.ddG[i] = 0.0;
            // All three equations close at the axis; record the exact limits.
            const double a3 = static_cast<double>(seed.order >= 3 ? seed.coeffs[3] : 1);
            const double phi0 = n - (n - 1.0) * a3;
            sol.residuals.eq1[i] = (n - 2.0) * a3 + a3 + phi0 - n;
            sol.residuals.eq2[i] = (n - 1.0) * a3 + phi0 - n;
            // (G'/G)(F'/F) -> G''(0)/G(0) = phi0 at the axis.
            sol.residuals.eq3[i] = phi0 + (n - 1.0) * phi0 - n;
            return;
        }
        const double ddF = ddF_closure(F, dF);
        const double ddG = G * (n - (n - 1.0) * ddF / F);
        p.ddF[i] = ddF;
        p.ddG[i] = ddG;
        const double fr = dF / F, gr = dG / G;
        sol.residuals.eq1[i] = (n - 2.0) * ddF / F + fr * fr - 1.0 / (F * F) + gr * fr - n;
        sol.residuals.eq2[i] = (n - 1.0) * ddF / F + ddG / G - n;
        sol.residuals.eq3[i] = ddG / G + (n - 1.0) * gr * fr - n;
    };

    // Series segment [0, r0].
    std::size_t first_ode = 0;
    while (first_ode < m && p.r[first_ode] < r0) {
        double ri = p.r[first_ode];
        fill_point(first_ode, seed.eval(ri), seed.eval_derivative(ri),
                   g0 * cap.eval_g(ri), g0 * cap.eval_dg(ri));
        ++first_ode;
    }

    // ODE segment [r0, r_max] in the state (F, F', G, G').
    num::OdeRhs<4> rhs = [&](double /*t*/, const num::OdeState<4>& y, num::OdeState<4>& dy) {
        const double ddF = ddF_closure(y[0], y[1]);
        dy[0] = y[1];
        dy[1] = ddF;
        dy[2] = y[3];
        dy[3] = y[2] * (n - (n - 1.0) * ddF / y[0]);
    };
    std::vector<double> times;
    times.push_back(r0);
    for (std::size_t i = first_ode; i < m; ++i) times.push_back(p.r[i]);
    num::OdeState<4> y0 = {seed.eval(r0), seed.eval_derivative(r0),
                           g0 * cap.eval_g(r0), g0 * cap.eval_dg(r0)};
    sol.stats = num::integrate_ode<4>(
        rhs, y0, times, tol, tol * 1e-2,
        [&](std::size_t k, const num::OdeState<4>& y, double err) {
            if (k == 0) return; // handoff point, not on the output grid
            std::size_t i = first_ode + k - 1;
            fill_point(i, y[0], y[1], y[2], y[3]);
            sol.local_error[i] = err;
        });

    for (std::size_t i = 0; i < m; ++i)
        sol.residuals.max_abs =
            std::max({sol.residuals.max_abs, std::abs(sol.residuals.eq1[i]),
                      std::abs(sol.residuals.eq2[i]), std::abs(sol.residuals.eq3[i])});
    return sol;
}

} // namespace pefill
