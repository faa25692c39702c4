#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "frechet/verify.hpp"

namespace frechet {

using ParamPoint = std::vector<double>;

// finite-dimensional parameter box [[lo,hi], ...]
struct ParamBox {
    std::vector<std::array<double, 2>> bounds;

    int dim() const { return static_cast<int>(bounds.size()); }
    bool contains(const ParamPoint& p) const;
    ParamBox shrunk_around(const ParamPoint& center, double factor) const;
};

// Parameterized problem f(x, p) with a parameter-uniform tame right inverse
// and base point f(x_base, p_base) = 0.
struct ParamProblem {
    std::string name;
    SpacePtr domain_space;
    SpacePtr image_space;
    std::function<Point(const Point&, const ParamPoint&)> f;
    std::function<Point(const Point&, const ParamPoint&, const Point&)> right_inverse;
    std::vector<double> c;
    int d = 0;
    Point x_base;
    ParamPoint p_base;
    ParamBox p_box;
    BoxDomain domain; // U in X

    // freeze the parameter: the resulting problem drives the solver
    TameProblem at(const ParamPoint& p) const;
};

// The proof's eps/delta/O data: f(B(x_base, delta), O) inside B°(0, eps),
// established by sampling with the box bisected until the inclusion holds.
struct Neighbourhoods {
    double eps = 0.0;   // B(x_base, 2 eps) inside U
    double delta = 0.0; // in (0, eps)
    ParamBox O;
    int bisections = 0;
    std::size_t probes = 0;
};

Neighbourhoods construct_neighbourhoods(const ParamProblem& problem, int probe_samples = 64,
                                        std::uint64_t seed = 0);

// Solves f(., p) = 0 from x_init; the report's solution is a member of S(p)
// up to tol.
SolveReport implicit_solve(const ParamProblem& problem, const ParamPoint& p, const Point& x_init,
                           double tol);

struct IftOptions {
    double rel_tol = 1e-6;
    std::uint64_t seed = 0;
    int probe_samples = 64;
};

// Samples (x, p) in U' x O and checks the distance estimate
//   rho_X(x, S(p)) <= rho'_Y(0, f(x,p)),
// the distance upper-bounded by one solved witness per sample.
VerificationReport verify_ift_estimate(const ParamProblem& problem, int samples,
                                       const IftOptions& opts = {});

// scalar family x + x^2/4 - p around (0, 0)
ParamProblem make_scalar_quadratic_family();

} // namespace frechet
