#include "frechet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

#include "frechet/parallel.hpp"

namespace frechet {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SolveOptions harness_solve_options(const TameProblem& problem, double graded_tol) {
    SolveOptions o;
    o.k0 = problem.reindexed_levels();
    o.graded_tol = graded_tol;
    o.keep_traces = false;
    return o;
}

// The witness-finding solver runs on a copy with loosened tame constants:
// the inequality under test uses the declared c, but finding preimages only
// needs some valid bound, and an understated declaration would otherwise
// fail the orbit certificates before the measurement could falsify it.
TameProblem loosened(const TameProblem& problem) {
    TameProblem relaxed = problem;
    for (double& cn : relaxed.c) cn *= 8.0;
    return relaxed;
}

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

void VerificationReport::finalize() {
    samples = rows.size();
    violations.clear();
    inconclusive_count = 0;
    max_slack = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        if (r.inconclusive) {
            ++inconclusive_count;
            continue;
        }
        max_slack = std::max(max_slack, r.slack);
        if (r.violation) violations.push_back(r);
    }
    std::sort(violations.begin(), violations.end(), [](const SampleRow& a, const SampleRow& b) {
        if (a.slack != b.slack) return a.slack > b.slack;
        return a.index < b.index;
    });
    if (!violations.empty())
        verdict = Verdict::fail;
    else if (inconclusive_count > 0)
        verdict = Verdict::inconclusive;
    else
        verdict = Verdict::pass;
}

std::string VerificationReport::csv() const {
    std::string out = "index,kind,lhs,rhs,slack,violation,inconclusive,inputs\n";
    for (const auto& r : rows) {
        out += std::to_string(r.index);
        out += ',';
        out += r.kind;
        out += ',';
        out += fmt17(r.lhs);
        out += ',';
        out += fmt17(r.rhs);
        out += ',';
        out += fmt17(r.slack);
        out += ',';
        out += r.violation ? '1' : '0';
        out += ',';
        out += r.inconclusive ? '1' : '0';
        out += ',';
        for (std::size_t i = 0; i < r.inputs.size(); ++i) {
            if (i) out += ';';
            out += fmt17(r.inputs[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json VerificationReport::summary() const {
    nlohmann::json j;
    j["claim"] = claim;
    j["samples"] = samples;
    j["seed"] = seed;
    j["tolerance"] = tolerance;
    j["verdict"] = to_string(verdict);
    j["violations"] = violations.size();
    j["inconclusive"] = inconclusive_count;
    j["max_slack"] = max_slack;
    nlohmann::json worst = nlohmann::json::array();
    for (std::size_t i = 0; i < violations.size() && i < 10; ++i) {
        const auto& r = violations[i];
        worst.push_back({{"index", r.index},
                         {"kind", r.kind},
                         {"lhs", r.lhs},
                         {"rhs", r.rhs},
                         {"slack", r.slack},
                         {"inputs", r.inputs}});
    }
    j["worst"] = std::move(worst);
    return j;
}

VerificationReport verify_surjectivity(const TameProblem& problem, const Point& x, double r,
                                       int samples, const SurjectivityOptions& opts) {
    const double m = problem.domain.m_U(x);
    if (!(r > 0.0) || !(r < m))
        throw std::out_of_range("verify_surjectivity: need 0 < r < m_U(x)");

    VerificationReport rep;
    rep.claim = "surjectivity: rho(x, x_hat) <= r + tol for targets with rho'(f(x),y) < r";
    rep.seed = opts.seed;
    rep.tolerance = opts.tol;

    const Point fx = problem.f(x);
    const SeminormFamily prime = problem.image_reindexed();
    const SeminormFamily dom = problem.domain_norms();
    // movement measured in the tame-controlled truncation (levels <= N-d)
    const int moved_top = std::min(problem.domain_space->levels(), problem.reindexed_levels());

    std::mt19937_64 rng(opts.seed);
    std::vector<Point> targets;
    targets.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        targets.push_back(sample_in_rho_ball(prime, fx, r * (1.0 - 1e-12), rng));

    rep.rows.resize(static_cast<std::size_t>(samples));
    const double solve_tol = r * opts.solve_tol_factor;
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
        const Point& y = targets[i];
        SampleRow row;
        row.index = i;
        row.kind = "surj";
        row.inputs = {rho(prime, fx, y)};
        SolveReport sr = solve(problem, y, x, solve_tol, harness_solve_options(problem, 0.0));
        row.rhs = r + opts.tol;
        if (sr.status != SolveStatus::converged) {
            // a failed solve inside the promised radius refutes the claim
            row.lhs = std::numeric_limits<double>::infinity();
            row.violation = true;
        } else {
            row.lhs = rho_k(dom, x, sr.solution, moved_top);
            row.violation = row.lhs > row.rhs;
        }
        row.slack = row.lhs - row.rhs;
        rep.rows[i] = std::move(row);
    });
    rep.finalize();
    return rep;
}

VerificationReport verify_inverse_lipschitz(const TameProblem& problem, int pairs,
                                            const InverseLipschitzOptions& opts) {
    VerificationReport rep;
    rep.claim = "inverse Lipschitz: ||f^{-1}u - f^{-1}v||_n <= c_n ||u-v||_{n+d} (1+rel_tol)";
    rep.seed = opts.seed;
    rep.tolerance = opts.rel_tol;

    const Point& x_ref = problem.domain.x_ref;
    const double m = problem.domain.m_U(x_ref);
    if (!(m > 0.0)) throw std::domain_error("verify_inverse_lipschitz: x_ref not interior to U");
    const double v_radius = 0.25 * m;

    const SeminormFamily dom = problem.domain_norms();
    const int N = problem.image_space->levels();
    const int top = problem.reindexed_levels();
    const TameProblem solver_problem = loosened(problem);

    std::mt19937_64 rng(opts.seed);
    std::vector<std::pair<Point, Point>> uv;
    uv.reserve(static_cast<std::size_t>(pairs));
    for (int i = 0; i < pairs; ++i) {
        const Point x1 = sample_in_rho_ball(dom, x_ref, v_radius, rng);
        const Point x2 = sample_in_rho_ball(dom, x_ref, v_radius, rng);
        uv.emplace_back(problem.f(x1), problem.f(x2));
    }

    rep.rows.resize(static_cast<std::size_t>(pairs));
    parallel_for(static_cast<std::size_t>(pairs), [&](std::size_t i) {
        const Point& u = uv[i].first;
        const Point& v = uv[i].second;
        SampleRow row;
        row.index = i;
        row.kind = "inv-lip";
        if (u.same_coeffs(v)) { // both sides vanish
            rep.rows[i] = std::move(row);
            return;
        }
        const auto sep = problem.image_space->seminorm_profile(u - v, N);
        // per-level residual targets keep the solver error a factor 2e-2
        // below the rel_tol slack at every checked level; a single absolute
        // target would be unreachable across the profile's scale span
        SolveOptions sopts = harness_solve_options(problem, 0.0);
        sopts.graded_tol_profile.resize(static_cast<std::size_t>(N) + 1);
        for (int m = 0; m <= N; ++m)
            sopts.graded_tol_profile[static_cast<std::size_t>(m)] =
                0.05 * opts.rel_tol * sep[static_cast<std::size_t>(std::max(m, problem.d))];
        SolveReport su = solve(solver_problem, u, x_ref, 1.0, sopts);
        SolveReport sv = solve(solver_problem, v, x_ref, 1.0, sopts);
        if (su.status != SolveStatus::converged || sv.status != SolveStatus::converged) {
            row.inconclusive = true;
            rep.rows[i] = std::move(row);
            return;
        }
        const auto lhs = problem.domain_space->seminorm_profile(su.solution - sv.solution, top);
        double worst = -std::numeric_limits<double>::infinity();
        int worst_n = 0;
        double worst_lhs = 0.0, worst_rhs = 0.0;
        for (int n = 0; n <= top; ++n) {
            // truncation safety: the reindexed side reads level n+d <= N only
            const double rhs =
                problem.c[static_cast<std::size_t>(n)] * sep[static_cast<std::size_t>(n + problem.d)] *
                (1.0 + opts.rel_tol);
            const double slack = lhs[static_cast<std::size_t>(n)] - rhs;
            if (slack > worst) {
                worst = slack;
                worst_n = n;
                worst_lhs = lhs[static_cast<std::size_t>(n)];
                worst_rhs = rhs;
            }
        }
        row.inputs = {static_cast<double>(worst_n)};
        row.lhs = worst_lhs;
        row.rhs = worst_rhs;
        row.slack = worst;
        row.violation = worst > 0.0;
        rep.rows[i] = std::move(row);
    });
    rep.finalize();
    return rep;
}

InjectivityReport verify_injectivity_conditions(const TameProblem& problem, int samples,
                                                const InjectivityOptions& opts) {
    if (!problem.derivative)
        throw std::invalid_argument("verify_injectivity_conditions: analytic derivative required");
    if (!problem.injectivity)
        throw std::invalid_argument("verify_injectivity_conditions: no declared constants");
    const InjectivityDecl& decl = *problem.injectivity;
    const int N = problem.domain_space->levels();
    if (static_cast<int>(decl.c.size()) < N + 1 || static_cast<int>(decl.cprime.size()) < N + 1)
        throw std::domain_error("verify_injectivity_conditions: constants for every level required");
    for (int n = 0; n <= N; ++n)
        if (!(decl.c[static_cast<std::size_t>(n)] > 0.0) ||
            !(decl.cprime[static_cast<std::size_t>(n)] > 0.0))
            throw std::domain_error("verify_injectivity_conditions: constants must be positive");
    if (decl.r < 0 || decl.r > N)
        throw std::domain_error("verify_injectivity_conditions: level r out of range");

    InjectivityReport out;
    out.base.claim = "injectivity sufficient conditions (eqq1, eqq2) and the derived eqq4 bound";
    out.base.seed = opts.seed;
    out.base.tolerance = opts.rel_tol;
    out.c_est.assign(static_cast<std::size_t>(N) + 1, 0.0);

    const double c_r = decl.c[static_cast<std::size_t>(decl.r)];
    const double cp_r = decl.cprime[static_cast<std::size_t>(decl.r)];
    out.delta_bound = 1.0 / (2.0 * c_r * cp_r);
    // half the bound, capped by the box radius at level r
    out.delta = std::min(0.5 * out.delta_bound,
                         problem.domain.radii[static_cast<std::size_t>(decl.r)]);
    out.c_eqq4 = 1.0 / (1.0 / c_r - 2.0 * out.delta * cp_r);

    const SeminormFamily dom = problem.domain_norms();
    std::mt19937_64 rng(opts.seed);

    std::vector<double> box = problem.domain.radii;
    for (double& b : box) b *= 1.0 - 1e-9;
    const LevelVector s_U(box);
    std::vector<double> ball(box.size(), 1.0);
    const LevelVector s_h(ball);
    std::vector<double> small = box;
    small[static_cast<std::size_t>(decl.r)] =
        std::min(small[static_cast<std::size_t>(decl.r)], out.delta * (1.0 - 1e-9));
    const LevelVector s_delta(small);

    auto sample_at = [&](const LevelVector& s) {
        return problem.domain.x_ref + sample_in_pi_ball(dom, problem.domain_space, s, rng);
    };

    std::size_t idx = 0;
    for (int i = 0; i < samples; ++i) {
        const Point x = sample_at(s_U);
        const Point z = sample_at(s_U);
        const Point h = sample_in_pi_ball(dom, problem.domain_space, s_h, rng);
        const auto hp = problem.domain_space->seminorm_profile(h, N);
        const auto fxh = problem.derivative(x, h);
        const auto fzh = problem.derivative(z, h);
        const auto fxp = problem.image_space->seminorm_profile(fxh, N);
        const auto dfp = problem.image_space->seminorm_profile(fxh - fzh, N);
        const auto xzp = problem.domain_space->seminorm_profile(x - z, N);

        SampleRow r1, r2;
        r1.index = idx++;
        r1.kind = "eqq1";
        r1.slack = -std::numeric_limits<double>::infinity();
        r2.index = idx++;
        r2.kind = "eqq2";
        r2.slack = -std::numeric_limits<double>::infinity();
        for (int n = 0; n <= N; ++n) {
            const auto ns = static_cast<std::size_t>(n);
            if (fxp[ns] > 0.0) out.c_est[ns] = std::max(out.c_est[ns], hp[ns] / fxp[ns]);
            const double rhs1 = decl.c[ns] * fxp[ns] * (1.0 + opts.rel_tol);
            if (hp[ns] - rhs1 > r1.slack) {
                r1.slack = hp[ns] - rhs1;
                r1.lhs = hp[ns];
                r1.rhs = rhs1;
                r1.inputs = {static_cast<double>(n)};
            }
            const std::size_t rr = static_cast<std::size_t>(decl.r);
            const double bracket = xzp[rr] * hp[ns] + xzp[ns] * hp[rr];
            if (bracket > 0.0) out.cprime_est = std::max(out.cprime_est, dfp[ns] / bracket);
            const double rhs2 = decl.cprime[ns] * bracket * (1.0 + opts.rel_tol);
            if (dfp[ns] - rhs2 > r2.slack) {
                r2.slack = dfp[ns] - rhs2;
                r2.lhs = dfp[ns];
                r2.rhs = rhs2;
                r2.inputs = {static_cast<double>(n)};
            }
        }
        r1.violation = r1.slack > 0.0;
        r2.violation = r2.slack > 0.0;
        out.base.rows.push_back(std::move(r1));
        out.base.rows.push_back(std::move(r2));

        // two-point estimate on the delta-ball at level r
        const Point x0 = sample_at(s_delta);
        const Point x1 = sample_at(s_delta);
        SampleRow r4;
        r4.index = idx++;
        r4.kind = "eqq4";
        r4.lhs = problem.domain_space->seminorm(x0 - x1, decl.r);
        r4.rhs = out.c_eqq4 * problem.image_space->seminorm(problem.f(x0) - problem.f(x1), decl.r) *
                 (1.0 + opts.rel_tol);
        r4.slack = r4.lhs - r4.rhs;
        r4.violation = r4.slack > 0.0;
        r4.inputs = {static_cast<double>(decl.r)};
        out.base.rows.push_back(std::move(r4));
    }
    out.base.finalize();
    out.verdict = out.base.verdict == Verdict::pass;
    return out;
}

LipschitzPathReport verify_lipschitz_path(const TameProblem& problem, const Point& u,
                                          const Point& v, int n,
                                          const LipschitzPathOptions& opts) {
    const int top = problem.reindexed_levels();
    if (n < 0 || n > top) throw std::out_of_range("verify_lipschitz_path: level out of range");

    LipschitzPathReport out;
    out.base.claim = "inverse bound along the segment and the Dini mean-value transfer";
    out.base.seed = opts.seed;
    out.base.tolerance = opts.rel_tol;

    const double cn = problem.c[static_cast<std::size_t>(n)];
    const double denom = cn * problem.image_space->seminorm(v - u, n + problem.d);
    if (denom == 0.0) { // u = v: g vanishes identically
        SampleRow row;
        row.kind = "path-trivial";
        out.base.rows.push_back(row);
        out.base.finalize();
        out.dini.hypothesis_holds = true;
        out.dini.verdict = true;
        out.pass = true;
        return out;
    }

    const Point dir = v - u;
    // the check reads one domain level n, so only the image level n+d needs
    // a tight residual target; the Dini quotients divide by steps >= 1e-4,
    // hence the 1e6 headroom
    const double g_tol = opts.rel_tol * denom / (1e6 * cn);
    SolveOptions sopts = harness_solve_options(problem, 0.0);
    const int N = problem.image_space->levels();
    sopts.graded_tol_profile.assign(static_cast<std::size_t>(N) + 1,
                                    std::numeric_limits<double>::infinity());
    sopts.graded_tol_profile[static_cast<std::size_t>(n + problem.d)] = g_tol;
    const Point& x_ref = problem.domain.x_ref;

    const TameProblem solver_problem = loosened(problem);
    std::map<double, Point> memo;
    bool solve_failed = false;
    auto inverse_at = [&](double lambda) -> const Point& {
        auto it = memo.find(lambda);
        if (it != memo.end()) return it->second;
        Point y = u;
        y.axpy(lambda, dir);
        SolveReport sr = solve(solver_problem, y, x_ref, 1.0, sopts);
        if (sr.status != SolveStatus::converged) solve_failed = true;
        return memo.emplace(lambda, std::move(sr.solution)).first->second;
    };

    const Point& inv_u = inverse_at(0.0);
    ScalarPath path;
    path.g = [&](double lambda) {
        return problem.domain_space->seminorm(inverse_at(lambda) - inv_u, n) / denom;
    };
    out.dini = dini_mvt_check(path, opts.interior_points, opts.rel_tol);

    // eq:invert cross-check at every lambda the Dini pass touched
    std::size_t idx = 0;
    for (const auto& [lambda, x_hat] : memo) {
        SampleRow row;
        row.index = idx++;
        row.kind = "path-invert";
        row.inputs = {lambda, static_cast<double>(n)};
        row.lhs = problem.domain_space->seminorm(x_hat - inv_u, n);
        row.rhs = lambda * denom * (1.0 + opts.rel_tol);
        row.slack = row.lhs - row.rhs;
        row.violation = row.slack > 0.0;
        row.inconclusive = solve_failed;
        out.base.rows.push_back(std::move(row));
    }
    out.base.finalize();
    if (solve_failed) {
        out.base.verdict = Verdict::inconclusive;
        out.pass = false;
        return out;
    }
    out.pass = out.dini.verdict && out.base.verdict == Verdict::pass;
    return out;
}

} // namespace frechet
