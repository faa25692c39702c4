#pragma once

#include <functional>
#include <vector>

#include "frechet/space.hpp"

namespace frechet {

// Scalar path on [0,1], evaluable anywhere; delta_lambda is the finest
// difference step used by the Dini estimators.
struct ScalarPath {
    std::function<double(double)> g;
    double delta_lambda = 1e-4;

    // largest jump between consecutive samples at the given resolution;
    // callers with a modulus bound can check continuity against it
    double max_jump(double resolution) const;
};

// (f(x+th) - f(x))/t with one Richardson extrapolation level (t and t/2).
// Verification-only; the solver never differentiates numerically.
Point dir_derivative_fd(const std::function<Point(const Point&)>& f, const Point& x,
                        const Point& h, double t);

// default decreasing step grid for the Dini upper-derivative estimator
std::vector<double> default_dini_steps();

// max over the step grid of (g(l+t) - g(l))/t; an estimator, not a limit
double dini_upper(const ScalarPath& path, double lambda, const std::vector<double>& steps);

struct DiniMvtReport {
    bool hypothesis_holds = false; // all sampled g+ estimates <= 1 + tol
    double g1 = 0.0;
    bool verdict = false; // asserted only when the hypothesis held
    double max_estimate = 0.0;
    double tolerance = 0.0;
    std::vector<double> step_grid; // provenance
    int interior_points = 0;
};

// Mean-value check for the Dini upper derivative: samples g+ on an interior
// grid; when every estimate stays <= 1 + tol, asserts g(1) <= 1 + tol.
// Sampled evidence only: the grid can falsify the hypothesis, not certify it.
DiniMvtReport dini_mvt_check(const ScalarPath& path, int interior_points = 33,
                             double tolerance = 1e-6,
                             const std::vector<double>& steps = default_dini_steps());

// int_0^1 f'(x0 + t(x1-x0))(x1-x0) dt by composite 2-point Gauss-Legendre on
// `panels` panels (order 4).
Point taylor_integral_remainder(
    const std::function<Point(const Point&, const Point&)>& fprime, const Point& x0,
    const Point& x1, int panels);

} // namespace frechet
