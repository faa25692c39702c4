#include "frechet/implicit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "frechet/parallel.hpp"

namespace frechet {

bool ParamBox::contains(const ParamPoint& p) const {
    if (static_cast<int>(p.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (p[static_cast<std::size_t>(i)] < bounds[static_cast<std::size_t>(i)][0] ||
            p[static_cast<std::size_t>(i)] > bounds[static_cast<std::size_t>(i)][1])
            return false;
    return true;
}

ParamBox ParamBox::shrunk_around(const ParamPoint& center, double factor) const {
    if (static_cast<int>(center.size()) != dim())
        throw std::invalid_argument("ParamBox: center dimension mismatch");
    ParamBox out;
    out.bounds.resize(bounds.size());
    for (int i = 0; i < dim(); ++i) {
        const auto is = static_cast<std::size_t>(i);
        const double c = center[is];
        const double lo = c - factor * (c - bounds[is][0]);
        const double hi = c + factor * (bounds[is][1] - c);
        out.bounds[is] = {lo, hi};
    }
    return out;
}

TameProblem ParamProblem::at(const ParamPoint& p) const {
    TameProblem pr;
    pr.name = name + "@p";
    pr.domain_space = domain_space;
    pr.image_space = image_space;
    auto fp = f;
    auto rip = right_inverse;
    pr.f = [fp, p](const Point& x) { return fp(x, p); };
    pr.right_inverse = [rip, p](const Point& x, const Point& v) { return rip(x, p, v); };
    pr.c = c;
    pr.d = d;
    pr.domain = domain;
    pr.smoke_target = image_space->zero();
    return pr;
}

Neighbourhoods construct_neighbourhoods(const ParamProblem& problem, int probe_samples,
                                        std::uint64_t seed) {
    Neighbourhoods nb;
    const double m = problem.domain.m_U(problem.x_base);
    if (!(m > 0.0)) throw std::domain_error("construct_neighbourhoods: x_base not interior to U");
    nb.eps = 0.25 * m; // keeps B(x_base, 2 eps) inside U
    {
        const TameProblem base = problem.at(problem.p_base);
        const double at_base =
            base.image_rho_prime(base.f(problem.x_base), problem.image_space->zero());
        if (at_base > 1e-12)
            throw std::domain_error("construct_neighbourhoods: f(x_base, p_base) != 0");
    }

    const SeminormFamily dom = SeminormFamily::of_space(problem.domain_space);
    double delta = 0.5 * nb.eps;
    double factor = 1.0;
    for (int bis = 0; bis < 60; ++bis) {
        const ParamBox O = problem.p_box.shrunk_around(problem.p_base, factor);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        bool ok = true;
        for (int i = 0; i < probe_samples && ok; ++i) {
            const Point x =
                sample_in_rho_ball(dom, problem.x_base, delta * (1.0 - 1e-12), rng);
            ParamPoint p(static_cast<std::size_t>(O.dim()));
            for (int q = 0; q < O.dim(); ++q) {
                const auto qs = static_cast<std::size_t>(q);
                p[qs] = O.bounds[qs][0] + (O.bounds[qs][1] - O.bounds[qs][0]) * u01(rng);
            }
            const TameProblem frozen = problem.at(p);
            const double r =
                frozen.image_rho_prime(frozen.f(x), problem.image_space->zero());
            ok = r < nb.eps * (1.0 - 1e-9);
        }
        if (ok) {
            nb.delta = delta;
            nb.O = O;
            nb.bisections = bis;
            nb.probes = static_cast<std::size_t>(probe_samples);
            return nb;
        }
        delta *= 0.5;
        factor *= 0.5;
    }
    throw std::runtime_error("construct_neighbourhoods: sampled inclusion never held");
}

SolveReport implicit_solve(const ParamProblem& problem, const ParamPoint& p, const Point& x_init,
                           double tol) {
    if (!problem.p_box.contains(p))
        throw std::domain_error("implicit_solve: parameter outside the declared box");
    const TameProblem frozen = problem.at(p);
    SolveOptions opts;
    opts.k0 = frozen.reindexed_levels();
    opts.keep_traces = false;
    return solve(frozen, problem.image_space->zero(), x_init, tol, opts);
}

VerificationReport verify_ift_estimate(const ParamProblem& problem, int samples,
                                       const IftOptions& opts) {
    VerificationReport rep;
    rep.claim = "implicit map: rho_X(x, S(p)) <= rho'_Y(0, f(x,p)) on U' x O";
    rep.seed = opts.seed;
    rep.tolerance = opts.rel_tol;

    const Neighbourhoods nb = construct_neighbourhoods(problem, opts.probe_samples, opts.seed);
    const SeminormFamily dom = SeminormFamily::of_space(problem.domain_space);
    const Point zero_y = problem.image_space->zero();

    std::mt19937_64 rng(opts.seed + 1);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<std::pair<Point, ParamPoint>> draws;
    draws.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        Point x = sample_in_rho_ball(dom, problem.x_base, nb.delta * (1.0 - 1e-12), rng);
        ParamPoint p(static_cast<std::size_t>(nb.O.dim()));
        for (int q = 0; q < nb.O.dim(); ++q) {
            const auto qs = static_cast<std::size_t>(q);
            p[qs] = nb.O.bounds[qs][0] + (nb.O.bounds[qs][1] - nb.O.bounds[qs][0]) * u01(rng);
        }
        draws.emplace_back(std::move(x), std::move(p));
    }

    rep.rows.resize(static_cast<std::size_t>(samples));
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
        const Point& x = draws[i].first;
        const ParamPoint& p = draws[i].second;
        const TameProblem frozen = problem.at(p);
        SampleRow row;
        row.index = i;
        row.kind = "ift";
        const double rhs_metric = frozen.image_rho_prime(frozen.f(x), zero_y);
        row.inputs = p;
        row.rhs = rhs_metric * (1.0 + opts.rel_tol) + 1e-15;
        if (rhs_metric == 0.0) { // x already solves f(x,p) = 0
            row.lhs = 0.0;
            row.slack = row.lhs - row.rhs;
            rep.rows[i] = std::move(row);
            return;
        }
        const double tol_solve = std::max(rhs_metric * opts.rel_tol * 1e-2, 1e-300);
        SolveOptions sopts;
        sopts.k0 = frozen.reindexed_levels();
        sopts.keep_traces = false;
        SolveReport sr = solve(frozen, zero_y, x, tol_solve, sopts);
        if (sr.status != SolveStatus::converged) {
            row.inconclusive = true;
            rep.rows[i] = std::move(row);
            return;
        }
        // one solved witness upper-bounds the distance to S(p)
        row.lhs = rho(dom, x, sr.solution);
        row.slack = row.lhs - row.rhs;
        row.violation = row.slack > 0.0;
        rep.rows[i] = std::move(row);
    });
    rep.finalize();
    return rep;
}

ParamProblem make_scalar_quadratic_family() {
    ParamProblem pp;
    pp.name = "scalar-quadratic-family";
    auto X = Space::euclidean(1, 16);
    pp.domain_space = X;
    pp.image_space = X;
    pp.f = [X](const Point& x, const ParamPoint& p) {
        const double v = x.raw()[0].real();
        return X->point_real({v + 0.25 * v * v - p.at(0)});
    };
    pp.right_inverse = [X](const Point& x, const ParamPoint&, const Point& v) {
        const double xv = x.raw()[0].real();
        const double vv = v.raw()[0].real();
        return X->point_real({vv / (1.0 + 0.5 * xv)});
    };
    pp.c = std::vector<double>(17, 2.0);
    pp.d = 0;
    pp.x_base = X->zero();
    pp.p_base = {0.0};
    pp.p_box.bounds = {{-0.05, 0.05}};
    pp.domain = box_domain(X->zero(), 1.0);
    return pp;
}

} // namespace frechet
