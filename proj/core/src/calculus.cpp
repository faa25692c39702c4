#include "frechet/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace frechet {

double ScalarPath::max_jump(double resolution) const {
    if (!(resolution > 0.0) || resolution > 1.0)
        throw std::invalid_argument("max_jump: resolution must be in (0,1]");
    double prev = g(0.0);
    double worst = 0.0;
    for (double l = resolution; l < 1.0 + 0.5 * resolution; l += resolution) {
        const double cur = g(std::min(l, 1.0));
        worst = std::max(worst, std::abs(cur - prev));
        prev = cur;
    }
    return worst;
}

Point dir_derivative_fd(const std::function<Point(const Point&)>& f, const Point& x,
                        const Point& h, double t) {
    if (!(t > 0.0)) throw std::domain_error("dir_derivative_fd: step must be positive");
    const Point fx = f(x);
    Point xt = x;
    xt.axpy(t, h);
    Point xh = x;
    xh.axpy(0.5 * t, h);
    const Point d1 = (1.0 / t) * (f(xt) - fx);        // forward quotient at t
    const Point d2 = (2.0 / t) * (f(xh) - fx);        // forward quotient at t/2
    return 2.0 * d2 - d1;                             // cancels the O(t) term
}

std::vector<double> default_dini_steps() { return {1e-2, 1e-3, 1e-4}; }

double dini_upper(const ScalarPath& path, double lambda, const std::vector<double>& steps) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw std::out_of_range("dini_upper: lambda must lie in (0,1)");
    if (steps.empty()) throw std::invalid_argument("dini_upper: empty step grid");
    double tmax = 0.0;
    for (double t : steps) {
        if (!(t > 0.0)) throw std::invalid_argument("dini_upper: steps must be positive");
        tmax = std::max(tmax, t);
    }
    if (lambda + tmax > 1.0) throw std::out_of_range("dini_upper: lambda + max step exceeds 1");
    const double gl = path.g(lambda);
    double est = -std::numeric_limits<double>::infinity();
    for (double t : steps) est = std::max(est, (path.g(lambda + t) - gl) / t);
    return est;
}

DiniMvtReport dini_mvt_check(const ScalarPath& path, int interior_points, double tolerance,
                             const std::vector<double>& steps) {
    if (interior_points < 1) throw std::invalid_argument("dini_mvt_check: need interior points");
    if (std::abs(path.g(0.0)) > 1e-12)
        throw std::invalid_argument("dini_mvt_check: g(0) must vanish (within 1e-12)");
    const double tmax = *std::max_element(steps.begin(), steps.end());

    DiniMvtReport rep;
    rep.tolerance = tolerance;
    rep.step_grid = steps;
    rep.interior_points = interior_points;
    rep.max_estimate = -std::numeric_limits<double>::infinity();
    // interior grid strictly inside (0, 1 - tmax] so every quotient stays in range
    const double span = 1.0 - tmax;
    for (int i = 1; i <= interior_points; ++i) {
        const double lambda = span * i / (interior_points + 1);
        rep.max_estimate = std::max(rep.max_estimate, dini_upper(path, lambda, steps));
    }
    rep.hypothesis_holds = rep.max_estimate <= 1.0 + tolerance;
    rep.g1 = path.g(1.0);
    rep.verdict = rep.hypothesis_holds && rep.g1 <= 1.0 + tolerance;
    return rep;
}

Point taylor_integral_remainder(
    const std::function<Point(const Point&, const Point&)>& fprime, const Point& x0,
    const Point& x1, int panels) {
    if (panels < 2) throw std::invalid_argument("taylor_integral_remainder: panels >= 2 required");
    const Point dir = x1 - x0;
    Point acc = x0.space()->zero();
    const double node = 1.0 / std::sqrt(3.0); // 2-point Gauss-Legendre on [-1,1]
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (double xi : {-node, node}) {
            const double t = mid + 0.5 * h * xi;
            Point xt = x0;
            xt.axpy(t, dir);
            acc.axpy(0.5 * h, fprime(xt, dir));
        }
    }
    return acc;
}

} // namespace frechet
