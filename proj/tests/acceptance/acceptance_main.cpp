// Acceptance suite: every quantitative conclusion the library claims, checked
// end to end at fixed tolerances with seeded sampling.  One line per
// criterion; exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "frechet/calculus.hpp"
#include "frechet/implicit.hpp"
#include "frechet/ode.hpp"
#include "frechet/seminorm_family.hpp"
#include "frechet/solver.hpp"
#include "frechet/verify.hpp"

using namespace frechet;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& msg) { g_notes.push_back(msg); }

void criterion(int id, const std::string& what, double budget_s, bool (*fn)()) {
    g_notes.clear();
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        note(std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_s) {
        ok = false;
        note("runtime " + std::to_string(dt) + " s exceeds budget " + std::to_string(budget_s) + " s");
    }
    for (const auto& n : g_notes) std::printf("       - %s\n", n.c_str());
    std::printf("[%s] %2d. %s (%.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                dt, budget_s);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

Point random_dyadic(const SpacePtr& space, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> grid(-2048, 2048);
    std::vector<cplx> c(space->coeff_count());
    for (auto& v : c) v = cplx(grid(rng) * 0x1p-10, grid(rng) * 0x1p-10);
    return space->point(std::move(c));
}

// ---------------------------------------------------------------- criterion 1
bool metric_ball_suite() {
    auto X = Space::fourier(6, 10);
    auto F = SeminormFamily::of_space(X);
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> cdist(1.0, 6.0);
    std::uniform_real_distribution<double> sdist(0.01, 3.0);
    int violations = 0;

    for (int i = 0; i < 1000; ++i) {
        const Point x = random_dyadic(X, rng);
        const Point y = random_dyadic(X, rng);
        const Point z = random_dyadic(X, rng);
        const double xy = rho(F, x, y);
        if (rho(F, y, x) != xy) ++violations;                       // symmetry, exact
        if (xy > rho(F, x, z) + rho(F, z, y) + 1e-12) ++violations; // triangle
        if ((xy == 0.0) != x.same_coeffs(y)) ++violations;          // separation
        if (rho(F, x + z, y + z) != xy) ++violations;               // translation, exact
    }
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> prof(11);
        for (auto& v : prof) v = sdist(rng);
        const LevelVector s(prof);
        const Point inball = sample_in_pi_ball(F, X, s, rng);
        if (!pi_contains(F, inball, s)) ++violations;
        const double c = cdist(rng);
        if (rho(F, c * inball, X->zero()) > c * s.magnitude() + 1e-12) ++violations; // Lemma 1
    }
    if (violations) note("violations: " + std::to_string(violations));
    return violations == 0;
}

// ---------------------------------------------------------------- criterion 2
bool orbit_certificates() {
    std::mt19937_64 rng(2002);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int runs = 0;
    int bad = 0;

    auto check = [&](const TameProblem& pr, const OrbitResult& r, const StepParams& params) {
        ++runs;
        if (r.status != SolveStatus::converged) {
            ++bad;
            note(pr.name + ": orbit did not converge");
            return;
        }
        const bool ok = r.trace.final_residual < params.eps * (1.0 + r.trace.ybar_k) &&
                        r.trace.orbit_length < params.mu &&
                        r.trace.ball_certificate <= params.sigma * (1.0 + 1e-12);
        if (!ok) {
            ++bad;
            note(pr.name + ": certificate violated");
        }
    };

    // scalar problems with the source-literal coupling step_cap = eps
    {
        auto pr = make_problem("scalar-quadratic");
        auto X = pr.domain_space;
        for (int i = 0; i < 260; ++i) {
            const double sign = u01(rng) < 0.5 ? -1.0 : 1.0;
            const double target = sign * (0.02 + 0.23 * u01(rng));
            const Point ybar = X->point_real({target});
            const double yk = pr.image_graded(ybar, 0);
            const double eps = std::min(0.01 + 0.2 * u01(rng), 0.4 * yk);
            const int k = static_cast<int>(u01(rng) * 16.9);
            check(pr, run_orbit(pr, X->zero(), ybar, StepParams::make(eps, k)), StepParams::make(eps, k));
        }
    }
    // graded problems with the scaled parameterization
    auto graded_runs = [&](const TameProblem& pr, double amp, int count) {
        auto X = pr.domain_space;
        const int ktop = pr.reindexed_levels();
        for (int i = 0; i < count; ++i) {
            const double a = amp * (0.2 + 0.8 * u01(rng));
            Point ybar = X->fourier_mode(1, cplx(0.5 * a, 0.0)) + X->fourier_mode(-1, cplx(0.5 * a, 0.0));
            const int k = static_cast<int>(u01(rng) * (ktop + 0.9));
            const double yk = pr.image_graded(ybar, k);
            const double eps = (0.02 + 0.3 * u01(rng)) * yk;
            const auto params = StepParams::make_scaled(eps, 0.3, k);
            check(pr, run_orbit(pr, X->zero(), ybar, params), params);
        }
    };
    graded_runs(make_problem("fourier-antiderivative"), 2e-6, 150);
    graded_runs(make_problem("fourier-quadratic"), 4e-9, 90);
    graded_runs(make_fourier_quadratic_wide(), 0.08, 20);

    note("runs: " + std::to_string(runs) + ", violations: " + std::to_string(bad));
    return runs >= 500 && bad == 0;
}

// ---------------------------------------------------------------- criterion 3
bool exact_solves() {
    bool ok = true;

    { // scalar-quadratic, closed-form root
        auto pr = make_problem("scalar-quadratic");
        auto X = pr.domain_space;
        auto rep = solve(pr, X->point_real({0.5}), X->zero(), 1e-10);
        const double root = -2.0 + std::sqrt(6.0);
        const double err = std::abs(rep.solution.raw()[0].real() - root);
        if (rep.status != SolveStatus::converged || err >= 1e-10) {
            ok = false;
            note("scalar-quadratic: err = " + std::to_string(err));
        }
    }

    { // fourier-quadratic against the per-node quadratic-formula oracle
        auto pr = make_problem("fourier-quadratic");
        auto X = pr.domain_space;
        Point y = X->fourier_mode(1, cplx(2.5e-9, 0.0)) + X->fourier_mode(-1, cplx(2.5e-9, 0.0));
        y += X->fourier_mode(2, cplx(0.0, 2e-12)) + X->fourier_mode(-2, cplx(0.0, -2e-12));
        SolveOptions opts;
        opts.k0 = 16;
        opts.graded_tol = 1e-15;
        auto rep = solve(pr, y, X->zero(), 1e-15, opts);
        if (rep.status != SolveStatus::converged) {
            ok = false;
            note("fourier-quadratic: solve failed");
        } else {
            auto yvals = X->fourier_values(y);
            std::vector<cplx> wvals(yvals.size());
            double wmax = 0.0;
            for (std::size_t g = 0; g < yvals.size(); ++g) {
                // cancellation-free branch of the quadratic formula
                wvals[g] = 2.0 * yvals[g] / (1.0 + std::sqrt(cplx(1.0, 0.0) + 4.0 * yvals[g]));
                wmax = std::max(wmax, std::abs(wvals[g]));
            }
            Point oracle = X->fourier_from_values(wvals);
            // the node->coefficient transform has a round-off floor of about
            // q^2 ulp(wmax); true content below it is smaller still
            const double q = static_cast<double>(wvals.size());
            const double floor_abs = 8.0 * q * q * wmax * 0x1p-52;
            for (auto& ccoef : oracle.raw())
                if (std::abs(ccoef) < floor_abs) ccoef = cplx(0.0, 0.0);
            double worst = 0.0;
            for (int n = 0; n <= 16; ++n)
                worst = std::max(worst, X->seminorm(rep.solution - oracle, n));
            auto got = X->fourier_values(rep.solution);
            for (std::size_t g = 0; g < wvals.size(); ++g)
                worst = std::max(worst, std::abs(got[g] - wvals[g]));
            if (worst >= 1e-7) {
                ok = false;
                note("fourier-quadratic: oracle mismatch " + std::to_string(worst));
            }
        }
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 4
bool surjectivity_sweep() {
    bool ok = true;
    for (const auto& name : problem_names()) {
        auto pr = make_problem(name);
        const double r = 0.5 * pr.domain.m_U(pr.domain.x_ref);
        SurjectivityOptions opts;
        opts.seed = 404;
        opts.tol = 1e-6;
        auto rep = verify_surjectivity(pr, pr.domain.x_ref, r, 100, opts);
        if (rep.verdict != Verdict::pass) {
            ok = false;
            note(name + ": verdict " + to_string(rep.verdict) +
                 ", violations " + std::to_string(rep.violations.size()));
        }
    }
    { // negative control: right inverse scaled by 10 breaks the constants
        auto pr = make_problem("scalar-quadratic");
        auto inner = pr.right_inverse;
        pr.right_inverse = [inner](const Point& x, const Point& v) { return 10.0 * inner(x, v); };
        SurjectivityOptions opts;
        opts.seed = 404;
        auto rep = verify_surjectivity(pr, pr.domain.x_ref, 0.2, 25, opts);
        if (rep.verdict != Verdict::fail) {
            ok = false;
            note("negative control did not fail");
        }
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 5
bool inverse_lipschitz_sweep() {
    bool ok = true;
    for (const auto& name : problem_names()) {
        auto pr = make_problem(name);
        InverseLipschitzOptions opts;
        opts.seed = 505;
        opts.rel_tol = 1e-6;
        auto rep = verify_inverse_lipschitz(pr, 200, opts);
        if (rep.verdict != Verdict::pass) {
            ok = false;
            note(name + ": verdict " + to_string(rep.verdict) + ", violations " +
                 std::to_string(rep.violations.size()) + ", inconclusive " +
                 std::to_string(rep.inconclusive_count));
        }
        if (name == "fourier-antiderivative" && pr.d != 1) {
            ok = false;
            note("expected d = 1 on fourier-antiderivative");
        }
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 6
bool injectivity_constants() {
    auto pr = make_problem("scalar-quadratic");
    InjectivityOptions opts;
    opts.seed = 606;
    opts.rel_tol = 1e-6;
    auto rep = verify_injectivity_conditions(pr, 1000, opts);
    bool ok = rep.verdict;
    if (rep.delta_bound != 1.0) {
        ok = false;
        note("delta_bound != 1");
    }
    if (rep.delta != 0.5 || rep.c_eqq4 != 4.0) {
        ok = false;
        note("delta/c_eqq4 mismatch");
    }
    std::size_t eqq4_violations = 0;
    for (const auto& v : rep.base.violations)
        if (v.kind == "eqq4") ++eqq4_violations;
    if (eqq4_violations) {
        ok = false;
        note("eqq4 violations: " + std::to_string(eqq4_violations));
    }
    if (!rep.verdict) note("sampled conditions failed");
    return ok;
}

// ---------------------------------------------------------------- criterion 7
bool dini_and_paths() {
    bool ok = true;
    {
        ScalarPath affine{[](double l) { return l; }, 1e-4};
        ScalarPath sine{[](double l) { return std::sin(l); }, 1e-4};
        ScalarPath steep{[](double l) { return 2.0 * l; }, 1e-4};
        auto ra = dini_mvt_check(affine);
        auto rs = dini_mvt_check(sine);
        auto rt = dini_mvt_check(steep);
        if (!(ra.verdict && rs.verdict)) {
            ok = false;
            note("affine/sin path failed the mean-value check");
        }
        if (rt.hypothesis_holds) {
            ok = false;
            note("slope-2 path was not rejected at the hypothesis stage");
        }
    }

    std::mt19937_64 rng(707);
    for (const auto& name : problem_names()) {
        auto pr = make_problem(name);
        const SeminormFamily dom = pr.domain_norms();
        const double radius = 0.25 * pr.domain.m_U(pr.domain.x_ref);
        const int ktop = pr.reindexed_levels();
        for (int seg = 0; seg < 20; ++seg) {
            const Point a = sample_in_rho_ball(dom, pr.domain.x_ref, radius, rng);
            const Point b = sample_in_rho_ball(dom, pr.domain.x_ref, radius, rng);
            const int level = seg % (ktop + 1);
            LipschitzPathOptions opts;
            opts.rel_tol = 1e-6;
            auto rep = verify_lipschitz_path(pr, pr.f(a), pr.f(b), level, opts);
            if (!rep.pass || rep.dini.g1 > 1.0 + 1e-6) {
                ok = false;
                note(name + " segment " + std::to_string(seg) + ": g(1) = " +
                     std::to_string(rep.dini.g1) + ", pass = " + std::to_string(rep.pass));
            }
        }
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 8
bool implicit_map_estimate() {
    auto pp = make_scalar_quadratic_family();
    IftOptions opts;
    opts.seed = 808;
    opts.rel_tol = 1e-6;
    auto rep = verify_ift_estimate(pp, 100, opts);
    if (rep.verdict != Verdict::pass) {
        note("verdict " + to_string(rep.verdict) + ", violations " +
             std::to_string(rep.violations.size()));
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 9
bool ode_application() {
    bool ok = true;
    const int T = 2000; // grid step 1e-3

    { // linear scalar vs closed form, and the rk4 cross-check
        auto pr = make_ode_problem("linear-scalar");
        auto res = cauchy_solve(pr, 0.1, T, 1e-10);
        double worst = 0.0;
        for (int i = 0; i <= T; ++i)
            worst = std::max(worst, std::abs(res.z.value(i).raw()[0].real() -
                                             std::exp(0.1 * res.z.node_time(i))));
        if (res.report.status != SolveStatus::converged || worst >= 1e-6) {
            ok = false;
            note("linear-scalar node error " + std::to_string(worst));
        }
        auto ref = rk4_reference(pr, 0.1, T);
        const Point diff = res.z.as_point() - ref.as_point();
        double dmax = 0.0;
        for (int n = 0; n <= 8; ++n) dmax = std::max(dmax, res.z.space()->seminorm(diff, n));
        if (dmax >= 1e-5) {
            ok = false;
            note("linear-scalar rk4 disagreement " + std::to_string(dmax));
        }
    }
    { // linear fourier vs closed form
        auto pr = make_ode_problem("linear-fourier");
        auto X = pr.state_space;
        auto res = cauchy_solve(pr, 0.1, T, 1e-10);
        double worst = 0.0;
        for (int i = 0; i <= T; ++i) {
            const Point diff = res.z.value(i) - pr.exact(0.1, res.z.node_time(i));
            worst = std::max(worst, X->seminorm(diff, 0));
        }
        if (res.report.status != SolveStatus::converged || worst >= 1e-6) {
            ok = false;
            note("linear-fourier node error " + std::to_string(worst));
        }
        auto ref = rk4_reference(pr, 0.1, T);
        const Point diff = res.z.as_point() - ref.as_point();
        double dmax = 0.0;
        for (int n = 0; n <= 8; ++n) dmax = std::max(dmax, res.z.space()->seminorm(diff, n));
        if (dmax >= 1e-5) {
            ok = false;
            note("linear-fourier rk4 disagreement " + std::to_string(dmax));
        }
    }
    { // Gronwall certificate at c_n = r0 = 1: the pinned 1 + 2e bound
        auto pr = make_ode_problem("linear-scalar");
        if (std::abs(gronwall_constant(0, pr) - 6.436563656918090) > 1e-12) {
            ok = false;
            note("gronwall constant mismatch");
        }
        std::mt19937_64 rng(909);
        std::uniform_real_distribution<double> amp(-2.0, 2.0);
        auto X = pr.state_space;
        const int Tg = 200;
        auto z = GridFunction::constant(X, Tg, pr.x0);
        int bad = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Point> vals;
            double a0 = amp(rng), a1 = amp(rng), b1 = amp(rng), a2 = amp(rng);
            for (int i = 0; i <= Tg; ++i) {
                const double s = -1.0 + 2.0 * i / Tg;
                vals.push_back(X->point_real(
                    {a0 + a1 * std::cos(s) + b1 * std::sin(s) + a2 * std::cos(2 * s)}));
            }
            auto v = GridFunction::c0_from_values(X, vals);
            const Point v0 = X->point_real({amp(rng)});
            auto u = linear_right_inverse(z, 0.999, v, v0, pr);
            for (int n = 0; n <= 8; ++n) {
                const double data = std::max(v.c1_seminorm(n), X->seminorm(v0, n));
                if (u.c1_seminorm(n) > gronwall_constant(n, pr) * data + 1e-6) ++bad;
            }
        }
        if (bad) {
            ok = false;
            note("gronwall violations: " + std::to_string(bad));
        }
    }
    { // fourth-order refinement evidence
        auto pr = make_ode_problem("linear-scalar");
        auto err = [&](int TT) {
            auto res = cauchy_solve(pr, 0.9, TT, 1e-11);
            double worst = 0.0;
            for (int i = 0; i <= TT; ++i)
                worst = std::max(worst, std::abs(res.z.value(i).raw()[0].real() -
                                                 std::exp(0.9 * res.z.node_time(i))));
            return worst;
        };
        const double ratio = err(20) / err(40);
        if (!(ratio >= 8.0)) {
            ok = false;
            note("refinement ratio " + std::to_string(ratio));
        }
    }
    return ok;
}

// --------------------------------------------------------------- criterion 10
bool reproducibility() {
    bool ok = true;
    auto pr = make_problem("scalar-quadratic");
    {
        SurjectivityOptions opts;
        opts.seed = 1010;
        auto a = verify_surjectivity(pr, pr.domain.x_ref, 0.2, 40, opts);
        auto b = verify_surjectivity(pr, pr.domain.x_ref, 0.2, 40, opts);
        if (a.csv() != b.csv() || a.summary().dump() != b.summary().dump()) {
            ok = false;
            note("surjectivity report differs across reruns");
        }
    }
    {
        InverseLipschitzOptions opts;
        opts.seed = 1010;
        auto a = verify_inverse_lipschitz(pr, 30, opts);
        auto b = verify_inverse_lipschitz(pr, 30, opts);
        if (a.csv() != b.csv()) {
            ok = false;
            note("inverse-lipschitz report differs across reruns");
        }
    }
    {
        IftOptions opts;
        opts.seed = 1010;
        auto pp = make_scalar_quadratic_family();
        auto a = verify_ift_estimate(pp, 50, opts);
        auto b = verify_ift_estimate(pp, 50, opts);
        if (a.csv() != b.csv() || a.summary().dump() != b.summary().dump()) {
            ok = false;
            note("ift report differs across reruns");
        }
    }
    {
        InjectivityOptions opts;
        opts.seed = 1010;
        auto a = verify_injectivity_conditions(pr, 100, opts);
        auto b = verify_injectivity_conditions(pr, 100, opts);
        if (a.base.csv() != b.base.csv()) {
            ok = false;
            note("injectivity report differs across reruns");
        }
    }
    return ok;
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion(1, "metric/ball suite: axioms, translation invariance, ball inclusion", 5, metric_ball_suite);
    criterion(2, "orbit certificates: residual, length, Pi-ball on >= 500 runs", 30, orbit_certificates);
    criterion(3, "exact solves against closed forms", 60, exact_solves);
    criterion(4, "local surjectivity at r = m_U/2 with negative control", 120, surjectivity_sweep);
    criterion(5, "inverse Lipschitz bound at every level, including d = 1", 120, inverse_lipschitz_sweep);
    criterion(6, "injectivity constants: delta_bound = 1, c_eqq4 = 4, no violations", 10, injectivity_constants);
    criterion(7, "Dini mean-value lemma and normalized inverse paths", 60, dini_and_paths);
    criterion(8, "implicit-map distance estimate on 100 samples", 60, implicit_map_estimate);
    criterion(9, "Cauchy problems: closed forms, Gronwall bound, rk4 agreement", 120, ode_application);
    criterion(10, "seeded reports reproduce byte-for-byte", 30, reproducibility);

    std::printf("%s: %d/10 criteria passed\n", g_failures == 0 ? "SUCCESS" : "FAILURE",
                10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
