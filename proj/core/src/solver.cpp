#include "frechet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frechet {

StepParams StepParams::make(double eps, int k, double sigma) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("StepParams: eps must be in (0,1)");
    return make_scaled(eps, eps, k, sigma);
}

StepParams StepParams::make_scaled(double eps, double step_cap, int k, double sigma) {
    if (!(eps > 0.0)) throw std::invalid_argument("StepParams: eps must be positive");
    if (!(step_cap > 0.0) || !(step_cap < 1.0))
        throw std::invalid_argument("StepParams: step_cap must be in (0,1)");
    if (!(sigma > 0.0)) throw std::invalid_argument("StepParams: sigma must be positive");
    if (k < 0) throw std::invalid_argument("StepParams: k must be >= 0");
    StepParams p;
    p.eps = eps;
    p.step_cap = step_cap;
    p.sigma = sigma;
    // midpoint of the admissible interval (sigma, sigma/(1-step_cap))
    p.mu = sigma * (2.0 - step_cap) / (2.0 * (1.0 - step_cap));
    p.k = k;
    return p;
}

std::string to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::step_failure: return "step_failure";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::left_domain: return "left_domain";
    }
    return "?";
}

bool accept_step(const TameProblem& problem, const LevelVector& s, const StepParams& params,
                 const Point& x, const Point& u, double t, const Point& ybar) {
    if (!(t > 0.0) || !(t < params.step_cap)) return false;
    const SeminormFamily dom = problem.domain_norms();
    if (!(s_norm(dom, u - x, s) / params.mu < t)) return false;
    Point res = problem.f(u) - problem.f(x);
    res.axpy(-t, ybar);
    return problem.image_graded(res, params.k) < params.eps * t;
}

namespace {

constexpr int kMaxHalvings = 60;

struct StepOutcome {
    bool accepted = false;
    bool saw_in_domain = false;
    double t = 0.0;
    int backtracks = 0;
    Point u;
    Point fu;
};

// backtrack t from t0 by halving until the acceptance test holds
StepOutcome try_step(const TameProblem& problem, const StepParams& params, const Point& x,
                     const Point& fx, const Point& h, const Point& ybar, double h_snorm,
                     double t0) {
    StepOutcome out;
    double t = t0;
    for (int halvings = 0; halvings <= kMaxHalvings; ++halvings, t *= 0.5) {
        if (!(t < params.step_cap)) continue;
        Point u = x;
        u.axpy(t, h);
        if (!problem.domain.contains(u)) continue;
        out.saw_in_domain = true;
        // t in (||u-x||_s/mu, step_cap): with u-x = t h this reads h_snorm < mu
        if (!(h_snorm < params.mu)) break; // no t can be accepted
        Point fu = problem.f(u);
        Point res = fu - fx;
        res.axpy(-t, ybar);
        if (problem.image_graded(res, params.k) < params.eps * t) {
            out.accepted = true;
            out.t = t;
            out.backtracks = halvings;
            out.u = std::move(u);
            out.fu = std::move(fu);
            return out;
        }
    }
    return out;
}

} // namespace

OrbitStepResult orbit_step(const TameProblem& problem, const LevelVector& s,
                           const StepParams& params, OrbitState state, const Point& ybar) {
    const SeminormFamily dom = problem.domain_norms();
    const Point h = problem.right_inverse(state.x, ybar);
    const double h_snorm = s_norm(dom, h, s);
    const Point fx = problem.f(state.x);
    if (state.f_base.empty()) state.f_base = fx; // this step starts the orbit

    auto out = try_step(problem, params, state.x, fx, h, ybar, h_snorm, 0.5 * params.step_cap);
    OrbitStepResult r;
    if (!out.accepted) {
        r.status = out.saw_in_domain ? SolveStatus::step_failure : SolveStatus::left_domain;
        r.state = std::move(state);
        return r;
    }

    state.p += out.t;
    OrbitStepRecord rec;
    rec.t = out.t;
    rec.step_norm = out.t * h_snorm;
    rec.backtracks = out.backtracks;
    Point part = out.fu - state.f_base; // |g(x_{i+1}) - p_i ybar|_k
    part.axpy(-state.p, ybar);
    rec.residual = problem.image_graded(part, params.k);
    state.trace.steps.push_back(rec);
    state.x = std::move(out.u);

    r.status = SolveStatus::converged;
    r.state = std::move(state);
    return r;
}

OrbitResult run_orbit(const TameProblem& problem, const Point& x0, const Point& ybar,
                      const StepParams& params, const LevelVector* slice) {
    OrbitResult result;
    result.trace.eps = params.eps;
    result.trace.k = params.k;

    if (ybar.is_zero()) { // the proof's standing assumption ybar != 0, special-cased
        result.x = x0;
        return result;
    }
    const double ybar_k = problem.image_graded(ybar, params.k);
    result.trace.ybar_k = ybar_k;
    if (!(ybar_k > params.eps))
        throw std::invalid_argument("run_orbit: requires |ybar|_k > eps");

    const LevelVector s = slice ? *slice : problem.tame_profile(ybar);
    const SeminormFamily dom = problem.domain_norms();
    const Point f_base = problem.f(x0);

    // stop target strictly inside (1-eps, 1); driving p this close to 1
    // leaves only (1-p)|ybar|_k residual from the proof's final estimate.
    // The floor keeps 1 - p_star representable next to 1.
    const double p_star = 1.0 - std::min(1e-12, std::max(0.5 * params.eps, 40.0 * 0x1p-53));

    Point x = x0;
    Point fx = f_base;
    double p = 0.0;
    double length = 0.0;
    const std::size_t max_steps =
        static_cast<std::size_t>(std::ceil(2.0 / params.step_cap)) * 64 + 256;

    // the 1e-15 guard stops once p - p_star is below double granularity
    while (p_star - p > 1e-15) {
        if (result.trace.steps.size() >= max_steps) {
            result.status = SolveStatus::step_failure;
            result.x = x;
            result.trace.p = p;
            return result;
        }
        const Point h = problem.right_inverse(x, ybar);
        const double h_snorm = s_norm(dom, h, s);
        const double t0 = std::min(0.5 * params.step_cap, p_star - p);
        auto out = try_step(problem, params, x, fx, h, ybar, h_snorm, t0);
        if (!out.accepted) {
            result.status = out.saw_in_domain ? SolveStatus::step_failure : SolveStatus::left_domain;
            result.x = x;
            result.trace.p = p;
            return result;
        }
        p += out.t;
        length += out.t * h_snorm;
        x = std::move(out.u);
        fx = std::move(out.fu);

        OrbitStepRecord rec;
        rec.t = out.t;
        rec.step_norm = out.t * h_snorm;
        rec.backtracks = out.backtracks;
        Point part = fx - f_base;
        part.axpy(-p, ybar);
        rec.residual = problem.image_graded(part, params.k);
        result.trace.steps.push_back(rec);
        // eq:y:smaller certificate per accepted step
        if (!(rec.residual < params.eps * p * (1.0 + 1e-9) + 1e-300)) {
            result.status = SolveStatus::step_failure;
            result.x = x;
            result.trace.p = p;
            return result;
        }
    }

    // each accepted t < step_cap <= 1 - p_star margin keeps p below 1
    if (!(p < 1.0)) throw std::logic_error("run_orbit: partial sum reached 1");
    result.trace.p = p;

    Point res = fx - f_base;
    res -= ybar;
    result.trace.final_residual = problem.image_graded(res, params.k);
    result.trace.ball_certificate = s_norm(dom, x - x0, s);
    result.trace.orbit_length = length;

    const bool certified = result.trace.final_residual < params.eps * (1.0 + ybar_k) &&
                           result.trace.ball_certificate <= params.sigma * (1.0 + 1e-9) &&
                           length < params.mu;
    result.status = certified ? SolveStatus::converged : SolveStatus::step_failure;
    result.x = std::move(x);
    return result;
}

OrbitResult pi_solve(const TameProblem& problem, const Point& x0, const Point& y,
                     const LevelVector& s, double eps1, int k) {
    if (!(eps1 > 0.0)) throw std::invalid_argument("pi_solve: eps1 must be positive");
    const Point v = y - problem.f(x0);
    if (v.is_zero()) {
        OrbitResult r;
        r.x = x0;
        return r;
    }
    // pre: y - f(x0) in Pi_s(Y) for the reindexed image seminorms
    const LevelVector needed = problem.tame_profile(v);
    const int top = std::min(needed.levels(), s.levels());
    for (int n = 0; n <= top; ++n)
        if (needed[n] > s[n] * (1.0 + 1e-12))
            throw std::domain_error("pi_solve: target outside the Pi_s(Y) ball");

    const double vk = problem.image_graded(v, k);
    const double eps = std::min(0.9 * eps1 / (1.0 + vk), 0.5 * vk);
    const double cap = std::min(0.45, std::max(eps / vk, 1e-6));
    return run_orbit(problem, x0, v, StepParams::make_scaled(eps, cap, k, 1.0), &s);
}

nlohmann::json SolveReport::to_json(bool with_traces) const {
    nlohmann::json j;
    j["status"] = frechet::to_string(status);
    j["residual_rho"] = residual_rho;
    j["residual_graded"] = residual_graded;
    j["outer_iterations"] = outer_iterations;
    j["rho_prime_initial"] = rho_prime_initial;
    j["rho_moved"] = rho_moved;
    j["radius_ok"] = radius_ok;
    j["m_U_x0"] = m_U_x0;
    j["tol"] = tol;
    {
        std::vector<double> re, im;
        for (cplx c : solution.coeffs()) {
            re.push_back(c.real());
            im.push_back(c.imag());
        }
        j["solution"] = {{"space", solution.space()->descriptor()}, {"re", re}, {"im", im}};
    }
    if (with_traces) {
        nlohmann::json traces = nlohmann::json::array();
        for (const auto& tr : orbit_traces) {
            nlohmann::json t;
            t["eps"] = tr.eps;
            t["k"] = tr.k;
            t["p"] = tr.p;
            t["ybar_k"] = tr.ybar_k;
            t["final_residual"] = tr.final_residual;
            t["ball_certificate"] = tr.ball_certificate;
            t["orbit_length"] = tr.orbit_length;
            t["accepted"] = tr.accepted;
            nlohmann::json steps = nlohmann::json::array();
            for (const auto& st : tr.steps)
                steps.push_back({{"t", st.t},
                                 {"step_norm", st.step_norm},
                                 {"residual", st.residual},
                                 {"backtracks", st.backtracks}});
            t["steps"] = std::move(steps);
            traces.push_back(std::move(t));
        }
        j["orbit_traces"] = std::move(traces);
    } else {
        j["orbit_count"] = orbit_traces.size();
    }
    return j;
}

SolveReport solve(const TameProblem& problem, const Point& y, const Point& x0, double tol,
                  const SolveOptions& opts) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");
    const SpacePtr& img = problem.image_space;
    const int N = img->levels();
    const int ktop = problem.reindexed_levels();

    SolveReport rep;
    rep.tol = tol;
    rep.rho_prime_initial = problem.image_rho_prime(problem.f(x0), y);
    rep.m_U_x0 = problem.domain.m_U(x0);
    rep.radius_ok = rep.rho_prime_initial < rep.m_U_x0; // the eq:surj radius condition

    Point x = x0;
    double theta = std::min(opts.eps0, 0.45); // relative residual scale
    int k = std::clamp(opts.k0, 0, ktop);

    if (!opts.graded_tol_profile.empty() &&
        static_cast<int>(opts.graded_tol_profile.size()) != N + 1)
        throw std::invalid_argument("solve: graded_tol_profile needs one entry per image level");

    auto base_rho = [&](const Point& fx) {
        return rho_of_profile(img->seminorm_profile(fx - y, N));
    };
    auto gates_met = [&](const Point& fx, double res) {
        if (res > tol) return false;
        if (opts.graded_tol <= 0.0 && opts.graded_tol_profile.empty()) return true;
        const auto p = img->seminorm_profile(fx - y, N);
        if (opts.graded_tol > 0.0 && *std::max_element(p.begin(), p.end()) > opts.graded_tol)
            return false;
        for (std::size_t n = 0; n < opts.graded_tol_profile.size(); ++n)
            if (p[n] > opts.graded_tol_profile[n]) return false;
        return true;
    };

    Point fx = problem.f(x);
    double res = base_rho(fx);
    int outer = 0;
    rep.status = SolveStatus::max_iterations;

    for (; outer < opts.max_outer; ++outer) {
        if (gates_met(fx, res)) {
            rep.status = SolveStatus::converged;
            break;
        }
        Point v = y - fx;
        const int k_eff = k;
        const double vk = problem.image_graded(v, k_eff);
        if (vk == 0.0) { // zero residual in every tracked seminorm
            rep.status = SolveStatus::converged;
            break;
        }
        // eps scales with the current residual so |ybar|_k > eps always
        // holds; the step cap stays coarse because p is driven to the stop
        // target anyway and backtracking absorbs rough steps
        const double eps_abs = theta * vk;
        const double cap = 0.45;

        OrbitResult orbit =
            run_orbit(problem, x, v, StepParams::make_scaled(eps_abs, cap, k_eff));
        if (orbit.status != SolveStatus::converged) {
            rep.status = orbit.status;
            orbit.trace.accepted = false;
            if (opts.keep_traces) rep.orbit_traces.push_back(std::move(orbit.trace));
            ++outer;
            break;
        }
        const Point fx_new = problem.f(orbit.x);
        const double res_new = base_rho(fx_new);
        const bool take = res_new <= res;
        orbit.trace.accepted = take;
        if (opts.keep_traces) rep.orbit_traces.push_back(std::move(orbit.trace));
        if (take) {
            x = std::move(orbit.x);
            fx = fx_new;
            res = res_new;
            k = std::min(k_eff + 1, ktop);
        }
        // a non-improving pass is discarded; either way the next pass is
        // finer; the floor keeps passes at O(2^10) steps
        theta = std::max(0.5 * theta, 0x1p-10);
    }

    rep.solution = x;
    rep.outer_iterations = outer;
    rep.residual_rho = res;
    rep.residual_graded = img->seminorm_profile(fx - y, N);
    // movement in the tame-controlled metric: the bound at domain level n
    // reads image level n+d, so levels above N-d are not checkable at this
    // truncation (full rho when d = 0)
    const int moved_top = std::min(problem.domain_space->levels(), ktop);
    rep.rho_moved = rho_of_profile(problem.domain_space->seminorm_profile(x - x0, moved_top));
    return rep;
}

} // namespace frechet
