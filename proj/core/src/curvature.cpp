#include "pefill/curvature.hpp"

#include "pefill/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pefill {

SectionalPoint sectional_at(double F, double dF, double ddF,
                            double G, double dG, double ddG) {
    SectionalPoint s;
    s.rX = -ddF / F;
    s.rT = -ddG / G;
    s.XX = (1.0 - dF * dF) / (F * F);
    s.XT = -(dF * dG) / (F * G);
    return s;
}

double weyl_norm_sq_at(int n, const SectionalPoint& sec, WeylNorm convention) {
    double w_rX = sec.rX + 1.0;
    double w_rT = sec.rT + 1.0;
    double w_XX = sec.XX + 1.0;
    double w_XT = sec.XT + 1.0;
    double m_rX = n - 1.0;
    double m_rT = 1.0;
    double m_XX = 0.5 * (n - 1.0) * (n - 2.0);
    double m_XT = n - 1.0;
    double v = m_rX * w_rX * w_rX + m_rT * w_rT * w_rT + m_XX * w_XX * w_XX +
               m_XT * w_XT * w_XT;
    return convention == WeylNorm::AllIndices ? 4.0 * v : v;
}

namespace {

// Cap-window evaluation. The smooth-closure slope is pinned to exactly 1
// (validate() has already checked the profile is within tolerance of that),
// so the 0/0 ratios have finite limits expressible in the fitted Taylor data.
SectionalPoint sectional_cap(const MetricProfile& p, const CapFit& fit, std::size_t i) {
    const double r = p.r[i];
    const double r2 = r * r;
    const double r4 = r2 * r2;
    // Capping factor phi ~ r + a3 r^3/6 + a5 r^5/120 + a7 r^7/5040.
    const double phi_over_r =
        1.0 + fit.a3 * r2 / 6.0 + fit.a5 * r4 / 120.0 + fit.a7 * r4 * r2 / 5040.0;
    const double e_over_r2 = fit.a3 / 2.0 + fit.a5 * r2 / 24.0 + fit.a7 * r4 / 720.0;
    const double dphi = 1.0 + e_over_r2 * r2;
    const double ddphi_over_r = fit.a3 + fit.a5 * r2 / 6.0 + fit.a7 * r4 / 120.0;
    // Transverse factor psi ~ p0 + p2 r^2 + p4 r^4 + p6 r^6.
    const double psi = fit.p0 + fit.p2 * r2 + fit.p4 * r4 + fit.p6 * r4 * r2;
    const double dpsi_over_r = 2.0 * fit.p2 + 4.0 * fit.p4 * r2 + 6.0 * fit.p6 * r4;
    const double ddpsi = 2.0 * fit.p2 + 12.0 * fit.p4 * r2 + 30.0 * fit.p6 * r4;

    // sec of the plane (dr ^ capping directions) and the in-cap plane family.
    const double sec_r_cap = -ddphi_over_r / phi_over_r;
    // (1 - dphi^2)/r^2 = -(2e + e^2)/r^2 with e = dphi - 1: the r^0
    // cancellation is done analytically.
    const double one_minus_dphi2_over_r2 =
        -(2.0 * e_over_r2 + e_over_r2 * e_over_r2 * r2);
    const double sec_capcap = one_minus_dphi2_over_r2 / (phi_over_r * phi_over_r);
    const double sec_r_psi = -ddpsi / psi;
    const double sec_mixed = -(dphi * dpsi_over_r) / (phi_over_r * psi);

    SectionalPoint s;
    if (p.cap_kind == CapKind::Sphere) {
        s.rX = sec_r_cap;   // -F''/F
        s.XX = sec_capcap;  // (1 - F'^2)/F^2
        s.rT = sec_r_psi;   // -G''/G
        s.XT = sec_mixed;   // -F'G'/(FG)
    } else {
        s.rT = sec_r_cap;   // -G''/G
        s.rX = sec_r_psi;   // -F''/F
        s.XT = sec_mixed;   // -F'G'/(FG)
        // (1 - F'^2)/F^2 is regular at a circle cap.
        const double dF = dpsi_over_r * r;
        s.XX = (1.0 - dF * dF) / (psi * psi);
    }
    return s;
}

} // namespace

CurvatureReport sectional_curvatures(const MetricProfile& profile,
                                     const CurvatureOptions& opts) {
    profile.validate();
    MetricProfile p = profile;
    p.ensure_derivatives();

    CurvatureReport rep;
    rep.n = p.n;
    rep.r = p.r;
    const std::size_t m = p.size();
    rep.sec_rX.resize(m);
    rep.sec_rT.resize(m);
    rep.sec_XX.resize(m);
    rep.sec_XT.resize(m);

    CapFit fit;
    bool have_fit = false;
    for (std::size_t i = 0; i < m; ++i) {
        const bool in_cap = p.cap_kind != CapKind::None && p.r[i] < opts.cap_window;
        if (in_cap) {
            if (!opts.use_cap_series)
                throw CapSingularity("cap point at r = " + std::to_string(p.r[i]) +
                                     " with series fallback disabled");
            if (!have_fit) {
                fit = fit_cap(p, opts.cap_fit_window);
                have_fit = true;
            }
            auto s = sectional_cap(p, fit, i);
            rep.sec_rX[i] = s.rX;
            rep.sec_rT[i] = s.rT;
            rep.sec_XX[i] = s.XX;
            rep.sec_XT[i] = s.XT;
        } else {
            if (p.F[i] == 0.0 || p.G[i] == 0.0)
                throw CapSingularity("vanishing warping factor at r = " +
                                     std::to_string(p.r[i]) + " outside the cap window");
            auto s = sectional_at(p.F[i], p.dF[i], p.ddF[i], p.G[i], p.dG[i], p.ddG[i]);
            rep.sec_rX[i] = s.rX;
            rep.sec_rT[i] = s.rT;
            rep.sec_XX[i] = s.XX;
            rep.sec_XT[i] = s.XT;
        }
    }
    return rep;
}

CurvatureReport ricci_and_residual(const MetricProfile& profile, double target,
                                   const CurvatureOptions& opts) {
    CurvatureReport rep = sectional_curvatures(profile, opts);
    const int n = rep.n;
    const std::size_t m = rep.size();
    rep.ric_rr.resize(m);
    rep.ric_XX.resize(m);
    rep.ric_TT.resize(m);
    rep.scal.resize(m);
    rep.einstein_residual.resize(m);
    rep.einstein_target = target;
    rep.max_einstein_residual = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        rep.ric_rr[i] = (n - 1) * rep.sec_rX[i] + rep.sec_rT[i];
        rep.ric_XX[i] = rep.sec_rX[i] + (n - 2) * rep.sec_XX[i] + rep.sec_XT[i];
        rep.ric_TT[i] = rep.sec_rT[i] + (n - 1) * rep.sec_XT[i];
        rep.scal[i] = rep.ric_rr[i] + (n - 1) * rep.ric_XX[i] + rep.ric_TT[i];
        double res = std::max({std::abs(rep.ric_rr[i] - target),
                               std::abs(rep.ric_XX[i] - target),
                               std::abs(rep.ric_TT[i] - target)});
        rep.einstein_residual[i] = res;
        rep.max_einstein_residual = std::max(rep.max_einstein_residual, res);
    }
    rep.has_ricci = true;
    return rep;
}

CurvatureReport ricci_and_residual(const MetricProfile& profile,
                                   const CurvatureOptions& opts) {
    return ricci_and_residual(profile, -static_cast<double>(profile.n), opts);
}

namespace {

void finalize_weyl(CurvatureReport& rep, const CurvatureOptions& opts) {
    const int n = rep.n;
    const std::size_t m = rep.size();
    const double m_rX = n - 1.0;
    const double m_rT = 1.0;
    const double m_XX = 0.5 * (n - 1.0) * (n - 2.0);
    const double m_XT = n - 1.0;
    const double factor = opts.weyl_norm == WeylNorm::AllIndices ? 4.0 : 1.0;
    rep.weyl_norm_sq.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        rep.weyl_norm_sq[i] =
            factor * (m_rX * rep.weyl_rX[i] * rep.weyl_rX[i] +
                      m_rT * rep.weyl_rT[i] * rep.weyl_rT[i] +
                      m_XX * rep.weyl_XX[i] * rep.weyl_XX[i] +
                      m_XT * rep.weyl_XT[i] * rep.weyl_XT[i]);
    }
    rep.weyl_convention = opts.weyl_norm;
    rep.has_weyl = true;
}

} // namespace

CurvatureReport weyl_diagonal(CurvatureReport rep, const CurvatureOptions& opts) {
    if (!rep.has_ricci)
        throw Error("weyl_diagonal: Ricci fields missing; run ricci_and_residual first");
    if (rep.max_einstein_residual > opts.einstein_tol)
        throw EinsteinResidualTooLarge(
            "Einstein shortcut requested with residual " +
            std::to_string(rep.max_einstein_residual) + " > tol " +
            std::to_string(opts.einstein_tol));
    const std::size_t m = rep.size();
    rep.weyl_rX.resize(m);
    rep.weyl_rT.resize(m);
    rep.weyl_XX.resize(m);
    rep.weyl_XT.resize(m);
    // For Ric = -n g the traceless-Ricci part of Riemann vanishes and
    // W_abab = R_abab + 1.
    for (std::size_t i = 0; i < m; ++i) {
        rep.weyl_rX[i] = rep.sec_rX[i] + 1.0;
        rep.weyl_rT[i] = rep.sec_rT[i] + 1.0;
        rep.weyl_XX[i] = rep.sec_XX[i] + 1.0;
        rep.weyl_XT[i] = rep.sec_XT[i] + 1.0;
    }
    finalize_weyl(rep, opts);
    return rep;
}

CurvatureReport weyl_kulkarni_nomizu(CurvatureReport rep, const CurvatureOptions& opts) {
    if (!rep.has_ricci)
        throw Error("weyl_kulkarni_nomizu: Ricci fields missing");
    const int d = rep.n + 1;
    const std::size_t m = rep.size();
    rep.weyl_rX.resize(m);
    rep.weyl_rT.resize(m);
    rep.weyl_XX.resize(m);
    rep.weyl_XT.resize(m);
    // W_abab = R_abab - (Ric_aa + Ric_bb)/(d-2) + scal/((d-1)(d-2)),
    // orthonormal frame, diagonal Riemann.
    const double kd = 1.0 / (d - 2.0);
    const double ks = 1.0 / ((d - 1.0) * (d - 2.0));
    for (std::size_t i = 0; i < m; ++i) {
        const double s = rep.scal[i] * ks;
        rep.weyl_rX[i] = rep.sec_rX[i] - kd * (rep.ric_rr[i] + rep.ric_XX[i]) + s;
        rep.weyl_rT[i] = rep.sec_rT[i] - kd * (rep.ric_rr[i] + rep.ric_TT[i]) + s;
        rep.weyl_XX[i] = rep.sec_XX[i] - kd * (rep.ric_XX[i] + rep.ric_XX[i]) + s;
        rep.weyl_XT[i] = rep.sec_XT[i] - kd * (rep.ric_XX[i] + rep.ric_TT[i]) + s;
    }
    finalize_weyl(rep, opts);
    return rep;
}

CurvatureReport full_curvature_report(const MetricProfile& profile,
                                      const CurvatureOptions& opts) {
    CurvatureReport rep = ricci_and_residual(profile, opts);
    if (rep.max_einstein_residual <= opts.einstein_tol)
        return weyl_diagonal(std::move(rep), opts);
    return weyl_kulkarni_nomizu(std::move(rep), opts);
}

} // namespace pefill
