#include "pefill/metric_profile.hpp"

#include "pefill/errors.hpp"
#include "pefill/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pefill {

std::string to_string(CapKind k) {
    switch (k) {
    case CapKind::None: return "none";
    case CapKind::Sphere: return "sphere-cap";
    case CapKind::Circle: return "circle-cap";
    }
    return "?";
}

void MetricProfile::ensure_derivatives() {
    if (dF.empty() || dG.empty()) {
        auto f = num::differentiate(r, F);
        auto g = num::differentiate(r, G);
        if (dF.empty()) dF = std::move(f.d1);
        if (dG.empty()) dG = std::move(g.d1);
        if (ddF.empty()) ddF = std::move(f.d2);
        if (ddG.empty()) ddG = std::move(g.d2);
    } else if (ddF.empty() || ddG.empty()) {
        // First derivatives given analytically: differentiate those instead.
        auto f = num::differentiate(r, dF);
        auto g = num::differentiate(r, dG);
        if (ddF.empty()) ddF = std::move(f.d1);
        if (ddG.empty()) ddG = std::move(g.d1);
    }
}

void MetricProfile::validate(double cap_tol) const {
    if (n < 3) throw InvalidProfile("boundary dimension n must be >= 3");
    if (r.size() < 5) throw InvalidProfile("profile needs at least 5 grid points");
    if (F.size() != r.size() || G.size() != r.size())
        throw InvalidProfile("profile column length mismatch");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1])) throw InvalidProfile("r grid not strictly increasing");
    if (cap_kind != CapKind::None) {
        if (r[0] != 0.0) throw InvalidProfile("capped profile must start at r = 0");
        const auto& capping = (cap_kind == CapKind::Sphere) ? F : G;
        const auto& transverse = (cap_kind == CapKind::Sphere) ? G : F;
        if (std::abs(capping[0]) > cap_tol)
            throw InvalidProfile("capping profile does not vanish at r = 0");
        if (std::abs(cap_slope - 1.0) > cap_tol)
            throw InvalidProfile("cap slope " + num::format_double(cap_slope) +
                                 " violates smooth closure (expected 1)");
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!(transverse[i] > 0.0))
                throw InvalidProfile("non-capping profile must be strictly positive");
        for (std::size_t i = 1; i < r.size(); ++i)
            if (!(capping[i] > 0.0))
                throw InvalidProfile("capping profile must be positive for r > 0");
    } else {
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!(F[i] > 0.0) || !(G[i] > 0.0))
                throw InvalidProfile("uncapped profile must have F, G > 0");
    }
}

CapFit fit_cap(const MetricProfile& p, double fit_window) {
    if (p.cap_kind == CapKind::None)
        throw CapSingularity("fit_cap called on a profile without a declared cap");
    // The Taylor model bias at r = 0 grows like (stencil radius)^6, so a tight
    // stencil of the smallest positive-r points beats a wide window. Rows are
    // divided by powers of r so every row constrains the leading coefficient
    // with O(1) weight.
    const std::size_t lo = (p.r[0] == 0.0) ? 1 : 0;
    std::size_t end = lo;
    while (end < p.r.size() && p.r[end] <= fit_window) ++end;
    end = std::min(end, lo + 5);
    end = std::max(end, std::min(lo + 3, p.r.size()));
    if (end < lo + 3)
        throw InvalidProfile("cap fit needs at least 3 grid points with r > 0");

    const auto& phi = (p.cap_kind == CapKind::Sphere) ? p.F : p.G;
    const auto& dphi = (p.cap_kind == CapKind::Sphere) ? p.dF : p.dG;
    const auto& ddphi = (p.cap_kind == CapKind::Sphere) ? p.ddF : p.ddG;
    const auto& psi = (p.cap_kind == CapKind::Sphere) ? p.G : p.F;
    const auto& dpsi = (p.cap_kind == CapKind::Sphere) ? p.dG : p.dF;
    const auto& ddpsi = (p.cap_kind == CapKind::Sphere) ? p.ddG : p.ddF;

    CapFit fit;
    {
        // (phi - r)/r^3, (phi' - 1)/r^2 and phi''/r against {a3, a5, a7}.
        std::vector<double> A;
        std::vector<double> b;
        const bool have_d = !dphi.empty();
        const bool have_dd = !ddphi.empty();
        for (std::size_t i = lo; i < end; ++i) {
            const double ri = p.r[i];
            const double r2 = ri * ri, r4 = r2 * r2;
            A.insert(A.end(), {1.0 / 6.0, r2 / 120.0, r4 / 5040.0});
            b.push_back((phi[i] - ri) / (ri * r2));
            if (have_d) {
                A.insert(A.end(), {0.5, r2 / 24.0, r4 / 720.0});
                b.push_back((dphi[i] - 1.0) / r2);
            }
            if (have_dd) {
                A.insert(A.end(), {1.0, r2 / 6.0, r4 / 120.0});
                b.push_back(ddphi[i] / ri);
            }
        }
        auto ls = num::solve_least_squares(A, b.size(), 3, b);
        fit.a3 = ls.coeffs[0];
        fit.a5 = ls.coeffs[1];
        fit.a7 = ls.coeffs[2];
    }
    {
        // psi, psi'/r and psi'' against {p0, p2, p4, p6}; the r = 0 row is
        // regular here, so it joins the stencil.
        std::vector<double> A;
        std::vector<double> b;
        const bool have_d = !dpsi.empty();
        const bool have_dd = !ddpsi.empty();
        for (std::size_t i = lo == 1 ? 0 : lo; i < end; ++i) {
            const double ri = p.r[i];
            const double r2 = ri * ri, r4 = r2 * r2;
            A.insert(A.end(), {1.0, r2, r4, r4 * r2});
            b.push_back(psi[i]);
            if (have_d && ri > 0.0) {
                A.insert(A.end(), {0.0, 2.0, 4.0 * r2, 6.0 * r4});
                b.push_back(dpsi[i] / ri);
            }
            if (have_dd) {
                A.insert(A.end(), {0.0, 2.0, 12.0 * r2, 30.0 * r4});
                b.push_back(ddpsi[i]);
            }
        }
        auto ls = num::solve_least_squares(A, b.size(), 4, b);
        fit.p0 = ls.coeffs[0];
        fit.p2 = ls.coeffs[1];
        fit.p4 = ls.coeffs[2];
        fit.p6 = ls.coeffs[3];
    }
    return fit;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

MetricProfile load_profile_csv(std::istream& in, int n) {
    MetricProfile p;
    p.n = n;
    std::string line;
    if (!std::getline(in, line)) throw InvalidProfile("empty profile CSV");
    auto header = split_csv(line);
    bool with_derivs = header.size() >= 7;
    if (header.size() != 3 && header.size() != 7)
        throw InvalidProfile("profile CSV header must be r,F,G or r,F,G,dF,dG,ddF,ddG");
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw InvalidProfile("profile CSV row width mismatch");
        p.r.push_back(std::stod(cells[0]));
        p.F.push_back(std::stod(cells[1]));
        p.G.push_back(std::stod(cells[2]));
        if (with_derivs) {
            p.dF.push_back(std::stod(cells[3]));
            p.dG.push_back(std::stod(cells[4]));
            p.ddF.push_back(std::stod(cells[5]));
            p.ddG.push_back(std::stod(cells[6]));
        }
    }
    if (p.r.size() < 5) throw InvalidProfile("profile CSV has fewer than 5 rows");
    p.ensure_derivatives();
    // Infer the cap from the data: the factor vanishing at r = 0 is the cap.
    if (p.r[0] == 0.0) {
        if (std::abs(p.F[0]) < 1e-9) {
            p.cap_kind = CapKind::Sphere;
            p.cap_slope = p.dF[0];
        } else if (std::abs(p.G[0]) < 1e-9) {
            p.cap_kind = CapKind::Circle;
            p.cap_slope = p.dG[0];
        }
    }
    return p;
}

MetricProfile load_profile_csv_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open profile CSV: " + path);
    return load_profile_csv(in, n);
}

void save_profile_csv(const MetricProfile& p, std::ostream& out) {
    bool with_derivs = !p.dF.empty();
    out << (with_derivs ? "r,F,G,dF,dG,ddF,ddG\n" : "r,F,G\n");
    for (std::size_t i = 0; i < p.size(); ++i) {
        out << num::format_double(p.r[i]) << ',' << num::format_double(p.F[i]) << ','
            << num::format_double(p.G[i]);
        if (with_derivs)
            out << ',' << num::format_double(p.dF[i]) << ',' << num::format_double(p.dG[i])
                << ',' << num::format_double(p.ddF[i]) << ',' << num::format_double(p.ddG[i]);
        out << '\n';
    }
}

void save_profile_csv_file(const MetricProfile& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output CSV: " + path);
    save_profile_csv(p, out);
}

} // namespace pefill
