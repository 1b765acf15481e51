// Command-line front end: filling enumeration, parameter scans, verification
// suites and machine-readable (JSON/CSV) report emission.

#include "pefill/ball_volume.hpp"
#include "pefill/einstein_ode.hpp"
#include "pefill/errors.hpp"
#include "pefill/filling_report.hpp"
#include "pefill/json_io.hpp"
#include "pefill/numerics.hpp"
#include "pefill/renormalized_volume.hpp"
#include "pefill/schwarzschild.hpp"
#include "pefill/yamabe.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;

    pefill::Config resolve() const {
        pefill::Config cfg;
        if (!config_path.empty()) cfg = pefill::load_config(config_path, cfg);
        for (const auto& kv : overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw pefill::Error("--set expects key=value, got '" + kv + "'");
            pefill::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        return cfg;
    }
};

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--config", common.config_path, "key = value config file");
    cmd->add_option("--set", common.overrides, "config override key=value")
        ->take_all();
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Poincare-Einstein fillings of S^1 x S^{n-1}: curvature, "
                 "renormalized volume, Yamabe and volume-comparison checks"};
    app.require_subcommand(1);

    Common common;
    int exit_code = 0;

    // fillings
    {
        auto* cmd = app.add_subcommand("fillings", "enumerate fillings at one lambda");
        auto n = std::make_shared<int>(3);
        auto lambda = std::make_shared<double>(0.5);
        cmd->add_option("--n", *n, "boundary sphere dimension + 1");
        cmd->add_option("--lambda", *lambda, "circle parameter")->required();
        add_common(cmd, common);
        cmd->callback([&, n, lambda] {
            emit(json(pefill::fillings(*n, *lambda, common.resolve())));
        });
    }

    // scan
    {
        auto* cmd = app.add_subcommand("scan", "CSV scan over a lambda interval");
        auto n = std::make_shared<int>(3);
        auto lo = std::make_shared<double>(0.1);
        auto hi = std::make_shared<double>(0.55);
        auto steps = std::make_shared<std::size_t>(10);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--n", *n, "boundary sphere dimension + 1");
        cmd->add_option("--lambda-min", *lo)->required();
        cmd->add_option("--lambda-max", *hi)->required();
        cmd->add_option("--steps", *steps)->required();
        cmd->add_option("--out", *out_path, "output CSV path (default stdout)");
        add_common(cmd, common);
        cmd->callback([&, n, lo, hi, steps, out_path] {
            auto cfg = common.resolve();
            if (out_path->empty()) {
                pefill::scan(*n, *lo, *hi, *steps, std::cout, cfg);
            } else {
                std::ofstream f(*out_path);
                if (!f) throw pefill::Error("cannot open '" + *out_path + "'");
                pefill::scan(*n, *lo, *hi, *steps, f, cfg);
            }
        });
    }

    // ode-verify
    {
        auto* cmd = app.add_subcommand(
            "ode-verify", "series seed, recursion identity, and integration check");
        auto n = std::make_shared<int>(3);
        cmd->add_option("--n", *n);
        add_common(cmd, common);
        cmd->callback([&, n] {
            auto cfg = common.resolve();
            auto seed = pefill::series_seed(*n, cfg.series_order);
            bool unit = true;
            for (int m = 1; m <= seed.order; m += 2)
                unit = unit && seed.coeffs[m] == 1;
            bool identity = pefill::combinatorial_identity_check(100);
            pefill::IntegrateOptions io;
            io.series_handoff = cfg.series_handoff;
            auto sol = pefill::integrate_profiles(*n, seed, 1.0, cfg.ode_r_max,
                                                  cfg.ode_tol, io);
            double sinh_dev = 0.0;
            if (*n == 3) {
                for (std::size_t i = 0; i < sol.profile.r.size(); ++i) {
                    const double r = sol.profile.r[i];
                    sinh_dev = std::max(
                        sinh_dev, std::abs(sol.profile.F[i] - std::sinh(r)) /
                                      (1.0 + std::sinh(r)));
                    sinh_dev = std::max(
                        sinh_dev, std::abs(sol.profile.G[i] - std::cosh(r)) /
                                      (1.0 + std::cosh(r)));
                }
            }
            bool pass = unit && identity &&
                        sol.residuals.max_abs <= 1e-6 &&
                        (*n != 3 || sinh_dev <= 1e-8);
            emit(json{{"seed_coefficients_unit", unit},
                      {"combinatorial_identity_q100", identity},
                      {"max_ode_residual", sol.residuals.max_abs},
                      {"sinh_relative_deviation", sinh_dev},
                      {"integrator_steps", sol.stats.steps},
                      {"pass", pass}});
            if (!pass) exit_code = 1;
        });
    }

    // gb-check
    {
        auto* cmd = app.add_subcommand("gb-check", "Gauss-Bonnet consistency check");
        auto s_h = std::make_shared<double>(1.0);
        auto lambda = std::make_shared<double>(0.5);
        auto hyp_flag = std::make_shared<bool>(false);
        auto chi = std::make_shared<double>(2.0);
        cmd->add_option("--s-h", *s_h, "Schwarzschild horizon radius");
        cmd->add_flag("--hyperbolic", *hyp_flag, "check the hyperbolic filling");
        cmd->add_option("--lambda", *lambda, "lambda for the hyperbolic filling");
        cmd->add_option("--chi", *chi, "Euler characteristic");
        add_common(cmd, common);
        cmd->callback([&, s_h, lambda, hyp_flag, chi] {
            auto cfg = common.resolve();
            pefill::GaussBonnetOptions opts;
            opts.weyl_norm = cfg.weyl_norm;
            opts.quad_rel_tol = cfg.gb_quad_rel_tol;
            opts.s_cut_factor = cfg.gb_s_cut_factor;
            opts.extract.stability_tol = cfg.fit_stability_tol;
            opts.extract.max_condition = cfg.fit_max_condition;
            opts.extract.quad_rel_tol = cfg.quad_rel_tol;
            pefill::GaussBonnetReport rep;
            double tol;
            if (*hyp_flag) {
                rep = pefill::gauss_bonnet_check_hyperbolic(*lambda, 0.0, opts);
                tol = 1e-8;
            } else {
                auto p = pefill::params_from_horizon(3, *s_h, cfg.omega_n);
                rep = pefill::gauss_bonnet_check(p, *chi, opts);
                tol = 1e-3 * 16.0 * M_PI * M_PI;
            }
            json j(rep);
            j["tolerance"] = tol;
            j["pass"] = rep.defect <= tol;
            emit(j);
            if (rep.defect > tol) exit_code = 1;
        });
    }

    // renvol
    {
        auto* cmd = app.add_subcommand("renvol", "renormalized volume");
        auto metric = std::make_shared<std::string>("schwarzschild");
        auto method = std::make_shared<std::string>("quadrature-fit");
        auto lambda = std::make_shared<double>(0.5);
        auto s_h = std::make_shared<double>(1.0);
        cmd->add_option("--metric", *metric)
            ->check(CLI::IsMember({"hyperbolic", "schwarzschild"}));
        cmd->add_option("--method", *method)
            ->check(CLI::IsMember({"closed-form", "quadrature-fit"}));
        cmd->add_option("--lambda", *lambda, "hyperbolic circle parameter");
        cmd->add_option("--s-h", *s_h, "Schwarzschild horizon radius");
        add_common(cmd, common);
        cmd->callback([&, metric, method, lambda, s_h] {
            auto cfg = common.resolve();
            if (*method == "closed-form") {
                double v = *metric == "hyperbolic"
                               ? 0.0
                               : pefill::renormalized_volume_closed_form(3, *s_h);
                emit(json{{"v_ren", v}, {"method", "closed-form"}});
                return;
            }
            pefill::CompactificationChart chart =
                *metric == "hyperbolic"
                    ? pefill::build_chart(cfg.n, *lambda)
                    : pefill::build_chart(
                          pefill::params_from_horizon(cfg.n, *s_h, cfg.omega_n));
            pefill::ExtractOptions eo;
            eo.quad_rel_tol = cfg.quad_rel_tol;
            eo.max_condition = cfg.fit_max_condition;
            eo.stability_tol = cfg.fit_stability_tol;
            auto grid = pefill::num::geomspace(cfg.eps_max, cfg.eps_min, cfg.eps_points);
            auto exp = pefill::extract_renormalized_volume(chart, grid, eo);
            json j(exp);
            j["method"] = "quadrature-fit";
            emit(j);
        });
    }

    // yamabe
    {
        auto* cmd = app.add_subcommand("yamabe", "product Yamabe constant");
        auto n = std::make_shared<int>(3);
        auto lambda = std::make_shared<double>(1.0);
        auto grid = std::make_shared<std::size_t>(0);
        cmd->add_option("--n", *n);
        cmd->add_option("--lambda", *lambda)->required();
        cmd->add_option("--grid", *grid, "circle grid points (default from config)");
        add_common(cmd, common);
        cmd->callback([&, n, lambda, grid] {
            auto cfg = common.resolve();
            std::size_t N = *grid ? *grid : cfg.yamabe_grid;
            emit(json(pefill::yamabe_product(*n, *lambda, N)));
        });
    }

    // volume-comparison
    {
        auto* cmd = app.add_subcommand("volume-comparison",
                                       "Monte-Carlo quotient ball volume");
        auto lambda = std::make_shared<double>(1.0);
        auto r = std::make_shared<double>(2.0);
        auto center = std::make_shared<double>(0.0);
        auto samples = std::make_shared<std::uint64_t>(0);
        auto seed = std::make_shared<std::uint64_t>(0);
        cmd->add_option("--lambda", *lambda)->required();
        cmd->add_option("--r", *r)->required();
        cmd->add_option("--center-distance", *center);
        cmd->add_option("--samples", *samples);
        cmd->add_option("--seed", *seed);
        add_common(cmd, common);
        cmd->callback([&, lambda, r, center, samples, seed] {
            auto cfg = common.resolve();
            pefill::BallVolumeOptions opts;
            opts.threads = cfg.mc_threads;
            auto est = pefill::quotient_ball_volume(
                *lambda, *center, *r, *samples ? *samples : cfg.mc_samples,
                *seed ? *seed : cfg.mc_seed, opts);
            const double reference = pefill::hyperbolic_ball_volume(3, *r);
            json j(est);
            j["hyperbolic_ball_volume"] = reference;
            j["ratio"] = est.mean / reference;
            emit(j);
        });
    }

    // verify-all
    {
        auto* cmd = app.add_subcommand("verify-all", "self-verification suite");
        add_common(cmd, common);
        cmd->callback([&] {
            auto sum = pefill::verify_all(common.resolve());
            emit(json(sum));
            if (!sum.all_pass) exit_code = 1;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage errors exit with 2
    } catch (const pefill::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
