#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frechet/level_vector.hpp"
#include "frechet/seminorm_family.hpp"
#include "frechet/space.hpp"

namespace frechet {

// Box-type domain U = { x : ||x - x_ref||_n < r_n for every n }.  m_U is the
// rho-distance to the complement, minimized face by face; the per-face value
// 2^{-n} gap_n/(1+gap_n) is exact for constant-seminorm models and a certified
// lower bound on graded scales.
struct BoxDomain {
    Point x_ref;
    std::vector<double> radii; // one per level 0..N

    bool contains(const Point& x) const;
    double m_U(const Point& x) const;
    int levels() const { return static_cast<int>(radii.size()) - 1; }
};

BoxDomain box_domain(const Point& x_ref, double radius);
BoxDomain box_domain(const Point& x_ref, std::vector<double> radii);

// Injectivity declarations for the sufficient-condition harness:
//   ||h||_n <= c_n ||f'(x)(h)||_n                                  (lower bound)
//   ||f'(x)h - f'(z)h||_n <= cprime_n [ ||x-z||_r ||h||_n + ||x-z||_n ||h||_r ]
struct InjectivityDecl {
    std::vector<double> c;
    std::vector<double> cprime;
    int r = 0;
};

// A nonlinear map with a tame right inverse of its directional derivative:
// right_inverse(x, v) returns h with f'(x, h) = v and ||h||_n <= c_n ||v||_{n+d}.
struct TameProblem {
    std::string name;
    SpacePtr domain_space;
    SpacePtr image_space;
    std::function<Point(const Point&)> f;
    std::function<Point(const Point&, const Point&)> right_inverse;
    std::vector<double> c; // tame constants, one per image level used
    int d = 0;             // loss of derivatives
    BoxDomain domain;
    // optional analytic derivative f'(x)(h); required by the injectivity harness
    std::function<Point(const Point&, const Point&)> derivative;
    std::optional<InjectivityDecl> injectivity;
    Point smoke_target; // small canonical target each catalog entry must solve

    SeminormFamily domain_norms() const { return SeminormFamily::of_space(domain_space); }
    SeminormFamily image_norms() const { return SeminormFamily::of_space(image_space); }
    // image seminorms reindexed by (c, d): |||v|||_n = c_n ||v||_{n+d}
    SeminormFamily image_reindexed() const;

    int reindexed_levels() const { return image_space->levels() - d; }
    // |||v|||-graded norm max_{n<=k} c_n ||v||_{n+d}
    double image_graded(const Point& v, int k) const;
    // metric of the reindexed image scale
    double image_rho_prime(const Point& u, const Point& v) const;
    // s_n = c_n ||v||_{n+d}; the right inverse of v lands in Pi_s(X)
    LevelVector tame_profile(const Point& v) const;
};

LevelVector tame_profile(const TameProblem& problem, const Point& v);

// built-in demo problems
std::vector<std::string> problem_names();
TameProblem make_problem(const std::string& name);

// paper-scale quadratic fixture on a short scale (levels=4): suited to
// targets like 0.1*cos where the registered problem's small box is too tight
TameProblem make_fourier_quadratic_wide();

} // namespace frechet
