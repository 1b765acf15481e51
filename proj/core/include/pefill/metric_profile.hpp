#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pefill {

/// Which warping factor closes off at r = 0.
enum class CapKind {
    None,   // profile does not reach an axis
    Sphere, // F(0) = 0: hyperbolic-type filling, S^{n-1} degenerates
    Circle, // G(0) = 0: Schwarzschild-type filling, the circle degenerates
};

std::string to_string(CapKind k);

/// Sampled warped-product profile for g = dr^2 + F^2 g_{S^{n-1}} + G^2 Theta^2,
/// Theta the period-2pi unit circle form. Curvature scale -1, so r is
/// dimensionless.
struct MetricProfile {
    int n = 3;                  // boundary dimension; total dimension n + 1
    std::vector<double> r;      // strictly increasing, r[0] = 0 when capped
    std::vector<double> F;
    std::vector<double> G;
    std::vector<double> dF, dG;   // first derivatives (may be filled by FD)
    std::vector<double> ddF, ddG; // second derivatives
    CapKind cap_kind = CapKind::None;
    double cap_slope = 1.0;     // derivative of the capping profile at r = 0

    std::size_t size() const { return r.size(); }

    /// Fills missing derivative columns by 5-point finite differences.
    void ensure_derivatives();

    /// Checks grid monotonicity, positivity of the non-capping factor and the
    /// smooth-closure conditions. Throws InvalidProfile on violation.
    void validate(double cap_tol = 1e-6) const;
};

/// Even/odd Taylor data fitted near a declared cap. For the capping factor
/// phi(r) ~ r + a3 r^3/6 + a5 r^5/120 + a7 r^7/5040 (slope pinned to 1 by
/// smooth closure); for the transverse factor
/// psi(r) ~ p0 + p2 r^2 + p4 r^4 + p6 r^6.
struct CapFit {
    double a3 = 0.0, a5 = 0.0, a7 = 0.0;
    double p0 = 1.0, p2 = 0.0, p4 = 0.0, p6 = 0.0;
};

/// Fits cap Taylor data from the first few grid points (at most 5 with r > 0,
/// restricted to the window of radius fit_window).
CapFit fit_cap(const MetricProfile& p, double fit_window = 0.25);

// CSV interface: header `r,F,G[,dF,dG,ddF,ddG]`, one row per grid point.
MetricProfile load_profile_csv(std::istream& in, int n);
MetricProfile load_profile_csv_file(const std::string& path, int n);
void save_profile_csv(const MetricProfile& p, std::ostream& out);
void save_profile_csv_file(const MetricProfile& p, const std::string& path);

} // namespace pefill
