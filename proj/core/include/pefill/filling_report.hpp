#pragma once

#include "pefill/config.hpp"
#include "pefill/gates.hpp"
#include "pefill/schwarzschild.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pefill {

enum class FillingKind { Hyperbolic, SchwarzschildPlus, SchwarzschildMinus };

std::string to_string(FillingKind kind);

struct FillingEntry {
    FillingKind kind = FillingKind::Hyperbolic;
    SchwarzschildParams params;
    double v_ren = 0.0;
    double weyl_energy = 0.0;
    double einstein_residual = 0.0;
    std::size_t v_ren_rank = 0; // 0 = largest v_ren
    GateVerdict gates;
};

/// All known Poincare-Einstein fillings of (S^1(2 pi lambda) x S^{n-1}, [g_lambda]):
/// the hyperbolic one, plus up to two Schwarzschild branches.
struct FillingReport {
    int n = 3;
    double lambda = 0.0;
    double yamabe_value = 0.0; // boundary Yamabe constant used by the gates
    std::vector<FillingEntry> entries;
    std::size_t max_v_ren_index = 0;
};

FillingReport fillings(int n, double lambda, const Config& cfg = {});

/// One CSV row per (lambda, entry); lambda on a uniform grid of `steps` points.
/// Header: lambda,kind,branch,s_h,mass,v_ren,v_ren_rank,weyl_energy,
/// einstein_residual,sup_weyl,nonpositive_curvature
void scan(int n, double lambda_min, double lambda_max, std::size_t steps,
          std::ostream& out, const Config& cfg = {});

struct VerifyCheck {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifySummary {
    std::vector<VerifyCheck> checks;
    bool all_pass = true;
};

/// Fast self-verification suite: ODE uniqueness and recursion, branch round
/// trips, renormalized-volume fit vs closed form, Gauss-Bonnet, gate sanity.
VerifySummary verify_all(const Config& cfg = {});

} // namespace pefill
