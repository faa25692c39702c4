#include "frechet/problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace frechet {

bool BoxDomain::contains(const Point& x) const {
    require_same_space(x, x_ref);
    const auto p = x_ref.space()->seminorm_profile(x - x_ref, levels());
    for (int n = 0; n <= levels(); ++n)
        if (!(p[static_cast<std::size_t>(n)] < radii[static_cast<std::size_t>(n)])) return false;
    return true;
}

double BoxDomain::m_U(const Point& x) const {
    require_same_space(x, x_ref);
    const auto p = x_ref.space()->seminorm_profile(x - x_ref, levels());
    // On a level-independent scale every level sees the same gap, so the
    // n = 0 metric term dominates the per-face minimum; on graded scales the
    // 2^{-n}-discounted value is the certified per-face lower bound.
    const bool flat = x_ref.space()->level_independent();
    double m = std::numeric_limits<double>::infinity();
    double w = 1.0;
    for (int n = 0; n <= levels(); ++n) {
        const double gap = radii[static_cast<std::size_t>(n)] - p[static_cast<std::size_t>(n)];
        if (gap <= 0.0) return 0.0;
        m = std::min(m, (flat ? 1.0 : w) * gap / (1.0 + gap));
        w *= 0.5;
    }
    return m;
}

BoxDomain box_domain(const Point& x_ref, double radius) {
    return BoxDomain{x_ref, std::vector<double>(
                                static_cast<std::size_t>(x_ref.space()->levels()) + 1, radius)};
}

BoxDomain box_domain(const Point& x_ref, std::vector<double> radii) {
    if (static_cast<int>(radii.size()) != x_ref.space()->levels() + 1)
        throw std::invalid_argument("box_domain: one radius per level required");
    return BoxDomain{x_ref, std::move(radii)};
}

SeminormFamily TameProblem::image_reindexed() const {
    return image_norms().reindexed(c, d);
}

double TameProblem::image_graded(const Point& v, int k) const {
    if (k < 0 || k > reindexed_levels())
        throw std::out_of_range("image_graded: level out of range");
    const auto p = image_space->seminorm_profile(v, k + d);
    double m = 0.0;
    for (int n = 0; n <= k; ++n)
        m = std::max(m, c[static_cast<std::size_t>(n)] * p[static_cast<std::size_t>(n + d)]);
    return m;
}

double TameProblem::image_rho_prime(const Point& u, const Point& v) const {
    const auto p = image_space->seminorm_profile(u - v, reindexed_levels() + d);
    double m = 0.0;
    double w = 1.0;
    for (int n = 0; n <= reindexed_levels(); ++n) {
        const double t = c[static_cast<std::size_t>(n)] * p[static_cast<std::size_t>(n + d)];
        m = std::max(m, w * t / (1.0 + t));
        w *= 0.5;
    }
    return m;
}

LevelVector TameProblem::tame_profile(const Point& v) const {
    const int top = reindexed_levels();
    const auto p = image_space->seminorm_profile(v, top + d);
    std::vector<double> s(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n)
        s[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n)] * p[static_cast<std::size_t>(n + d)];
    return LevelVector(std::move(s));
}

LevelVector tame_profile(const TameProblem& problem, const Point& v) {
    return problem.tame_profile(v);
}

namespace {

TameProblem make_scalar_quadratic() {
    TameProblem pr;
    pr.name = "scalar-quadratic";
    auto X = Space::euclidean(1, 16);
    pr.domain_space = X;
    pr.image_space = X;
    pr.f = [X](const Point& x) {
        const double v = x.raw()[0].real();
        return X->point_real({v + 0.25 * v * v});
    };
    pr.derivative = [X](const Point& x, const Point& h) {
        const double xv = x.raw()[0].real();
        const double hv = h.raw()[0].real();
        return X->point_real({(1.0 + 0.5 * xv) * hv});
    };
    pr.right_inverse = [X](const Point& x, const Point& v) {
        const double xv = x.raw()[0].real();
        const double vv = v.raw()[0].real();
        return X->point_real({vv / (1.0 + 0.5 * xv)});
    };
    pr.c = std::vector<double>(17, 2.0);
    pr.d = 0;
    pr.domain = box_domain(X->zero(), 1.0);
    pr.injectivity = InjectivityDecl{std::vector<double>(17, 2.0), std::vector<double>(17, 0.25), 0};
    pr.smoke_target = X->point_real({0.5});
    return pr;
}

// f(u) = u + u^2 with the product truncated to |j| <= M.  The right inverse
// solves (1 + 2u) h = v (in the truncated-product sense) by fixed-point
// iteration in coefficient space: a collocation division would pollute the
// high modes with roundoff that the level weights amplify by (1+M)^N.
TameProblem make_fourier_quadratic(int modes, int levels, double box_radius, double c_all,
                                   std::string name, cplx smoke_amplitude) {
    TameProblem pr;
    pr.name = std::move(name);
    auto X = Space::fourier(modes, levels);
    pr.domain_space = X;
    pr.image_space = X;
    pr.f = [X](const Point& u) { return u + X->pointwise_mul(u, u); };
    pr.derivative = [X](const Point& u, const Point& h) {
        return h + 2.0 * X->pointwise_mul(u, h);
    };
    pr.right_inverse = [X](const Point& u, const Point& v) {
        const int N = X->levels();
        const auto vp = X->seminorm_profile(v, N);
        Point h = v;
        double best = std::numeric_limits<double>::infinity();
        Point best_h = h;
        for (int it = 0; it < 80; ++it) {
            Point r = v - h;
            r.axpy(-2.0, X->pointwise_mul(u, h));
            const auto rp = X->seminorm_profile(r, N);
            double rel = 0.0;
            for (int n = 0; n <= N; ++n)
                rel = std::max(rel, rp[static_cast<std::size_t>(n)] /
                                        (vp[static_cast<std::size_t>(n)] + 1e-300));
            if (rel < best) {
                best = rel;
                best_h = h;
            }
            // graded levels can amplify the error transient before the
            // plain-norm contraction wins, so the divergence guard is late
            if (rel <= 5e-5 || (it > 40 && rel > best * 10.0)) break;
            h += r; // Jacobi step, the diagonal of the operator is 1
        }
        return best_h;
    };
    pr.c = std::vector<double>(static_cast<std::size_t>(levels) + 1, c_all);
    pr.d = 0;
    pr.domain = box_domain(X->zero(), box_radius);
    pr.smoke_target = X->fourier_mode(1, smoke_amplitude) + X->fourier_mode(-1, smoke_amplitude);
    return pr;
}

// Antiderivative-type smoothing map: modes j != 0 are integrated, the mean is
// kept.  Its right inverse differentiates, so the honest tame estimate loses
// one derivative: ||h||_n <= ||v||_{n+1} with c_n = 1, d = 1.
TameProblem make_fourier_antiderivative() {
    TameProblem pr;
    pr.name = "fourier-antiderivative";
    const int levels = 16;
    auto X = Space::fourier(64, levels);
    pr.domain_space = X;
    pr.image_space = X;
    auto apply = [X](const Point& u) {
        auto c = u.raw();
        const int M = X->modes();
        for (int j = -M; j <= M; ++j) {
            if (j == 0) continue;
            c[static_cast<std::size_t>(j + M)] /= cplx(0.0, static_cast<double>(j));
        }
        return X->point(std::move(c));
    };
    pr.f = apply;
    pr.derivative = [apply](const Point&, const Point& h) { return apply(h); };
    pr.right_inverse = [X](const Point&, const Point& v) {
        auto c = v.raw();
        const int M = X->modes();
        for (int j = -M; j <= M; ++j) {
            if (j == 0) continue;
            c[static_cast<std::size_t>(j + M)] *= cplx(0.0, static_cast<double>(j));
        }
        return X->point(std::move(c));
    };
    pr.c = std::vector<double>(static_cast<std::size_t>(levels), 1.0); // levels 0..N-1
    pr.d = 1;
    // the top domain level sits beyond the tame-controlled range N-d, so the
    // box leaves it unconstrained
    std::vector<double> radii(static_cast<std::size_t>(levels) + 1, 1.0);
    radii.back() = 1e30;
    pr.domain = box_domain(X->zero(), std::move(radii));
    pr.smoke_target = X->fourier_mode(1, cplx(5e-7, 0.0)) + X->fourier_mode(-1, cplx(5e-7, 0.0));
    return pr;
}

} // namespace

std::vector<std::string> problem_names() {
    return {"scalar-quadratic", "fourier-quadratic", "fourier-antiderivative"};
}

TameProblem make_problem(const std::string& name) {
    if (name == "scalar-quadratic") return make_scalar_quadratic();
    if (name == "fourier-quadratic")
        return make_fourier_quadratic(64, 16, 0x1p-10, 2.0, "fourier-quadratic", cplx(2.5e-9, 0.0));
    if (name == "fourier-antiderivative") return make_fourier_antiderivative();
    throw std::invalid_argument("unknown problem: " + name);
}

TameProblem make_fourier_quadratic_wide() {
    return make_fourier_quadratic(32, 4, 2.0, 8.0, "fourier-quadratic-wide", cplx(0.05, 0.0));
}

} // namespace frechet
