#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frechet/implicit.hpp"

namespace frechet {

// Time-discretized curve on [-1,1]: T+1 uniform nodes with a state value per
// node and, for the C1 representation, an explicit derivative value per node
// (the C1 seminorm needs both sup families, so both are stored).
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(Point curve_point); // point of a curve_c0/c1 space

    // derivative slots from central differences (one-sided at the ends)
    static GridFunction from_values(const SpacePtr& base, const std::vector<Point>& values);
    static GridFunction from_values_and_derivatives(const SpacePtr& base,
                                                    const std::vector<Point>& values,
                                                    const std::vector<Point>& derivatives);
    static GridFunction constant(const SpacePtr& base, int segments, const Point& x0);
    // C0 curve (no derivative slots)
    static GridFunction c0_from_values(const SpacePtr& base, const std::vector<Point>& values);

    bool is_c1() const;
    int segments() const;
    double node_time(int i) const;
    Point value(int i) const;
    Point derivative(int i) const; // C1 only
    const Point& as_point() const { return p_; }
    const SpacePtr& space() const { return p_.space(); }

    // max over nodes of max(||z(t)||_n, ||z'(t)||_n); plain sup norm for C0
    double c1_seminorm(int n) const;

private:
    Point p_;
};

// x'(t) = f(t, x(t)), x(0) = x0, with the Gateaux derivative D_x f declared
// analytically and the eq:ode-condition constants c_n.
struct CauchyProblem {
    std::string name;
    SpacePtr state_space;
    std::function<Point(double, const Point&)> f;
    std::function<Point(double, const Point&, const Point&)> dxf; // (t, x, h)
    std::vector<double> c; // ||D_x f(t,x)(h)||_n <= c_n ||h||_n
    double r0 = 1.0;
    Point x0;
    double state_box_radius = 10.0; // U = box around x0 in every level
    // closed form z(r, s) when available, for oracles
    std::function<Point(double, double)> exact;
};

struct FPair {
    GridFunction residual; // C0 curve s -> z'(s) - r f(rs, z(s))
    Point initial;         // z(0)
};

// F(z,r) = (z'(s) - r f(rs, z(s)), z(0)) evaluated on the grid
FPair F_eval(const GridFunction& z, double r, const CauchyProblem& problem);

// linearization at z applied to u: (u'(s) - r D_x f(rs, z(s)) u(s), u(0))
FPair DzF_apply(const GridFunction& z, double r, const GridFunction& u,
                const CauchyProblem& problem);

// Solves D_z F(z,r)(u) = (v, v0) by RK4 marching forward on [0,1] and
// backward on [-1,0]; midpoint data comes from cubic interpolation of v and
// Hermite interpolation of z.  The returned u carries exact slot data
// u' = r D_x f u + v, so it is an exact algebraic right inverse on the grid.
// Norm growth beyond 10x the Gronwall bound raises a runtime error.
GridFunction linear_right_inverse(const GridFunction& z, double r, const GridFunction& v,
                                  const Point& v0, const CauchyProblem& problem);

// (1 + (1 + r0 c_n) e^{r0 c_n})
double gronwall_constant(int n, const CauchyProblem& problem);

// the parameterized grid operator G(z, r) = F(z, r) - (0, x0) wired for the
// implicit module, with tame constants gronwall_constant(n) and d = 0
ParamProblem ode_param_problem(const CauchyProblem& problem, int segments);

struct CauchySolveResult {
    GridFunction z;
    SolveReport report;
};

// Solves the rescaled Cauchy problem z'(s) = r f(rs, z(s)), z(0) = x0 via
// the implicit module from the constant initial curve.
CauchySolveResult cauchy_solve(const CauchyProblem& problem, double r, int segments, double tol);

// direct RK4 on the rescaled equation; independent cross-check only
GridFunction rk4_reference(const CauchyProblem& problem, double r, int segments);

// registered Cauchy problems: linear-scalar | linear-fourier | logistic-scalar
std::vector<std::string> ode_problem_names();
CauchyProblem make_ode_problem(const std::string& name);

// CSV rows (node, time, level, value seminorm, derivative seminorm)
std::string curve_csv(const GridFunction& z);
// raw coefficients per node
nlohmann::json curve_json(const GridFunction& z);

} // namespace frechet
