// Batch driver for the tame-solver library: exact solves, verification
// harnesses, implicit-map experiments and Cauchy problems, with seeded,
// byte-reproducible JSON/CSV reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "run_config.hpp"

#include "frechet/implicit.hpp"
#include "frechet/ode.hpp"
#include "frechet/parallel.hpp"
#include "frechet/problem.hpp"
#include "frechet/solver.hpp"
#include "frechet/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolverFailure = 3;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using frechet_cli::RunConfig;

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
    f << content;
}

void emit(const RunConfig& cfg, const json& summary, const std::string& csv = {}) {
    json full = summary;
    full["config"] = cfg.to_json();
    const std::string text = full.dump(2) + "\n";
    std::cout << text;
    write_file(cfg.out, "summary.json", text);
    if (!csv.empty()) write_file(cfg.out, "samples.csv", csv);
}

frechet::Point make_target(const frechet::TameProblem& pr, double t) {
    using frechet::Space;
    if (pr.image_space->model() == Space::Model::euclidean) {
        std::vector<double> v(pr.image_space->coeff_count(), 0.0);
        v[0] = t;
        return pr.image_space->point_real(v);
    }
    // fourier: t * cos(theta)
    return pr.image_space->fourier_mode(1, frechet::cplx(0.5 * t, 0.0)) +
           pr.image_space->fourier_mode(-1, frechet::cplx(0.5 * t, 0.0));
}

int run_solve(const RunConfig& cfg) {
    const frechet::TameProblem pr = frechet::make_problem(cfg.problem);
    const frechet::Point y = make_target(pr, cfg.target);
    frechet::SolveOptions opts;
    opts.eps0 = cfg.eps0;
    opts.k0 = cfg.k0;
    opts.max_outer = cfg.max_outer;
    const frechet::SolveReport rep = frechet::solve(pr, y, pr.domain.x_ref, cfg.tol, opts);
    json summary = rep.to_json(cfg.trace);
    summary["problem"] = cfg.problem;
    summary["space"] = pr.domain_space->descriptor();
    if (pr.domain_space->model() == frechet::Space::Model::euclidean)
        summary["x"] = rep.solution.raw()[0].real();
    emit(cfg, summary);
    return rep.status == frechet::SolveStatus::converged ? kExitPass : kExitSolverFailure;
}

int verdict_exit(frechet::Verdict v) {
    return v == frechet::Verdict::pass ? kExitPass : kExitVerificationFailure;
}

int run_verify(const RunConfig& cfg, const std::string& which) {
    using namespace frechet;
    if (which == "ift") {
        if (cfg.problem != "scalar-quadratic-family" && cfg.problem != "scalar-quadratic") {
            std::cerr << "verify ift: unknown family '" << cfg.problem << "'\n";
            return kExitUsage;
        }
        ParamProblem pp = make_scalar_quadratic_family();
        if (!cfg.p_box.empty()) pp.p_box.bounds = cfg.p_box; // config override
        IftOptions opts;
        opts.rel_tol = cfg.rel_tol;
        opts.seed = cfg.seed;
        const int samples = cfg.ift_grid > 0 ? cfg.ift_grid : cfg.samples;
        const VerificationReport rep = verify_ift_estimate(pp, samples, opts);
        emit(cfg, rep.summary(), rep.csv());
        return verdict_exit(rep.verdict);
    }
    const TameProblem pr = make_problem(cfg.problem);
    if (which == "surj") {
        const double r = 0.5 * pr.domain.m_U(pr.domain.x_ref);
        SurjectivityOptions opts;
        opts.seed = cfg.seed;
        opts.tol = cfg.rel_tol;
        const VerificationReport rep =
            verify_surjectivity(pr, pr.domain.x_ref, r, cfg.samples, opts);
        json s = rep.summary();
        s["r"] = r;
        emit(cfg, s, rep.csv());
        return verdict_exit(rep.verdict);
    }
    if (which == "inverse") {
        InverseLipschitzOptions opts;
        opts.seed = cfg.seed;
        opts.rel_tol = cfg.rel_tol;
        const VerificationReport rep = verify_inverse_lipschitz(pr, cfg.samples, opts);
        emit(cfg, rep.summary(), rep.csv());
        return verdict_exit(rep.verdict);
    }
    if (which == "inject") {
        InjectivityOptions opts;
        opts.seed = cfg.seed;
        opts.rel_tol = cfg.rel_tol;
        const InjectivityReport rep = verify_injectivity_conditions(pr, cfg.samples, opts);
        json s = rep.base.summary();
        s["delta_bound"] = rep.delta_bound;
        s["delta"] = rep.delta;
        s["c_eqq4"] = rep.c_eqq4;
        s["cprime_est"] = rep.cprime_est;
        s["c_est"] = rep.c_est;
        emit(cfg, s, rep.base.csv());
        return rep.verdict ? kExitPass : kExitVerificationFailure;
    }
    std::cerr << "unknown verify experiment '" << which << "'\n";
    return kExitUsage;
}

int run_ode(const RunConfig& cfg) {
    const frechet::CauchyProblem pr = frechet::make_ode_problem(cfg.ode);
    const frechet::CauchySolveResult res = frechet::cauchy_solve(pr, cfg.r, cfg.grid, cfg.tol);
    json summary;
    summary["ode"] = cfg.ode;
    summary["r"] = cfg.r;
    summary["grid"] = cfg.grid;
    summary["status"] = frechet::to_string(res.report.status);
    summary["residual_rho"] = res.report.residual_rho;
    summary["residual_graded"] = res.report.residual_graded;
    summary["outer_iterations"] = res.report.outer_iterations;
    emit(cfg, summary, frechet::curve_csv(res.z));
    if (!cfg.out.empty())
        write_file(cfg.out, "solution.json", frechet::curve_json(res.z).dump(2) + "\n");
    return res.report.status == frechet::SolveStatus::converged ? kExitPass : kExitSolverFailure;
}

int run_list() {
    for (const auto& name : frechet::problem_names()) {
        const frechet::TameProblem pr = frechet::make_problem(name);
        std::cout << name << "  space=" << pr.domain_space->name() << "  d=" << pr.d
                  << "  c0=" << fmt17(pr.c[0]) << "  box_r0=" << fmt17(pr.domain.radii[0])
                  << "\n";
    }
    for (const auto& name : frechet::ode_problem_names()) {
        const frechet::CauchyProblem pr = frechet::make_ode_problem(name);
        std::cout << "ode:" << name << "  space=" << pr.state_space->name()
                  << "  r0=" << fmt17(pr.r0) << "  c0=" << fmt17(pr.c[0]) << "\n";
    }
    std::cout << "family:scalar-quadratic-family  space=euclidean(1)\n";
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tame right-inverse orbit solver and verification harnesses"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--seed", cfg.seed, "random seed");
        cmd->add_option("--out", cfg.out, "output directory for reports");
        cmd->add_option("--samples", cfg.samples, "sample count");
        cmd->add_option("--tol", cfg.tol, "solver tolerance");
        cmd->add_flag("--trace", cfg.trace, "include full orbit traces");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve f(x) = y on a registered problem");
    add_common(solve);
    solve->add_option("--problem", cfg.problem, "registered problem name");
    solve->add_option("--target", cfg.target, "target scale (scalar value / cosine amplitude)");
    solve->add_option("--eps0", cfg.eps0, "initial eps of the outer schedule");
    solve->add_option("--k0", cfg.k0, "initial graded level");
    solve->add_option("--max-outer", cfg.max_outer, "outer iteration cap");

    CLI::App* verify = app.add_subcommand("verify", "verification harnesses");
    verify->require_subcommand(1);
    std::vector<CLI::App*> vsubs;
    for (const char* name : {"surj", "inverse", "inject", "ift"}) {
        CLI::App* sub = verify->add_subcommand(name, std::string("verify ") + name);
        add_common(sub);
        sub->add_option("--problem", cfg.problem, "registered problem name");
        sub->add_option("--rel-tol", cfg.rel_tol, "inequality slack tolerance");
        vsubs.push_back(sub);
    }

    CLI::App* ode = app.add_subcommand("ode", "solve a registered Cauchy problem");
    add_common(ode);
    ode->add_option("--ode", cfg.ode, "registered Cauchy problem");
    ode->add_option("--r", cfg.r, "time-rescaling parameter, 0 < r < r0");
    ode->add_option("--grid", cfg.grid, "segment count (even)");

    CLI::App* list = app.add_subcommand("list", "list registered problems");
    (void)list;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "cannot open config " << config_path << "\n";
                return kExitUsage;
            }
            json j = json::parse(f);
            RunConfig file_cfg = RunConfig::from_json(j);
            // flags already parsed win over file values only where given;
            // simplest deterministic rule: file provides the base, flags on
            // the command line were applied into cfg first, so merge fields
            // the file sets explicitly
            file_cfg.out = cfg.out.empty() ? file_cfg.out : cfg.out;
            file_cfg.trace = cfg.trace || file_cfg.trace;
            cfg = file_cfg;
        }

        if (app.got_subcommand("solve")) {
            cfg.experiment = "solve";
            return run_solve(cfg);
        }
        if (app.got_subcommand("verify")) {
            CLI::App* v = app.get_subcommand("verify");
            for (const char* name : {"surj", "inverse", "inject", "ift"}) {
                if (v->got_subcommand(name)) {
                    cfg.experiment = std::string("verify-") + name;
                    return run_verify(cfg, name);
                }
            }
            return kExitUsage;
        }
        if (app.got_subcommand("ode")) {
            cfg.experiment = "ode";
            return run_ode(cfg);
        }
        if (app.got_subcommand("list")) return run_list();
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolverFailure;
    }
}
