#include "frechet/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace frechet {

namespace {

SpacePtr require_curve(const Point& p, const char* what) {
    if (p.empty()) throw std::invalid_argument(std::string(what) + ": empty point");
    const auto m = p.space()->model();
    if (m != Space::Model::curve_c0 && m != Space::Model::curve_c1)
        throw std::invalid_argument(std::string(what) + ": not a curve point");
    return p.space();
}

} // namespace

GridFunction::GridFunction(Point curve_point) : p_(std::move(curve_point)) {
    require_curve(p_, "GridFunction");
}

bool GridFunction::is_c1() const { return p_.space()->model() == Space::Model::curve_c1; }

int GridFunction::segments() const { return p_.space()->segments(); }

double GridFunction::node_time(int i) const { return p_.space()->node_time(i); }

Point GridFunction::value(int i) const { return p_.space()->node_value(p_, i); }

Point GridFunction::derivative(int i) const { return p_.space()->node_derivative(p_, i); }

double GridFunction::c1_seminorm(int n) const { return p_.space()->seminorm(p_, n); }

GridFunction GridFunction::from_values_and_derivatives(const SpacePtr& base,
                                                       const std::vector<Point>& values,
                                                       const std::vector<Point>& derivatives) {
    const int T = static_cast<int>(values.size()) - 1;
    auto space = Space::curve_c1(base, T);
    return GridFunction(space->assemble_curve(values, derivatives));
}

GridFunction GridFunction::from_values(const SpacePtr& base, const std::vector<Point>& values) {
    const int T = static_cast<int>(values.size()) - 1;
    if (T < 2) throw std::invalid_argument("from_values: need at least 3 nodes");
    const double h = 2.0 / T;
    std::vector<Point> der;
    der.reserve(values.size());
    for (int i = 0; i <= T; ++i) {
        if (i == 0) {
            // one-sided O(h^2): (-3 z0 + 4 z1 - z2) / (2h)
            Point d = (-3.0) * values[0];
            d.axpy(4.0, values[1]);
            d.axpy(-1.0, values[2]);
            der.push_back((1.0 / (2.0 * h)) * d);
        } else if (i == T) {
            Point d = 3.0 * values[static_cast<std::size_t>(T)];
            d.axpy(-4.0, values[static_cast<std::size_t>(T - 1)]);
            d.axpy(1.0, values[static_cast<std::size_t>(T - 2)]);
            der.push_back((1.0 / (2.0 * h)) * d);
        } else {
            Point d = values[static_cast<std::size_t>(i + 1)] - values[static_cast<std::size_t>(i - 1)];
            der.push_back((1.0 / (2.0 * h)) * d);
        }
    }
    return from_values_and_derivatives(base, values, der);
}

GridFunction GridFunction::constant(const SpacePtr& base, int segments, const Point& x0) {
    std::vector<Point> values(static_cast<std::size_t>(segments) + 1, x0);
    std::vector<Point> der(static_cast<std::size_t>(segments) + 1, base->zero());
    return from_values_and_derivatives(base, values, der);
}

GridFunction GridFunction::c0_from_values(const SpacePtr& base, const std::vector<Point>& values) {
    const int T = static_cast<int>(values.size()) - 1;
    auto space = Space::curve_c0(base, T);
    return GridFunction(space->assemble_curve(values));
}

FPair F_eval(const GridFunction& z, double r, const CauchyProblem& problem) {
    if (!z.is_c1()) throw std::invalid_argument("F_eval: z must be a C1 grid function");
    if (!(std::abs(r) < problem.r0)) throw std::domain_error("F_eval: |r| < r0 required");
    const int T = z.segments();
    std::vector<Point> res;
    res.reserve(static_cast<std::size_t>(T) + 1);
    for (int i = 0; i <= T; ++i) {
        const double s = z.node_time(i);
        Point ri = z.derivative(i);
        ri.axpy(-r, problem.f(r * s, z.value(i)));
        res.push_back(std::move(ri));
    }
    FPair out;
    out.residual = GridFunction::c0_from_values(problem.state_space, res);
    out.initial = z.value(T / 2);
    return out;
}

FPair DzF_apply(const GridFunction& z, double r, const GridFunction& u,
                const CauchyProblem& problem) {
    if (!z.is_c1() || !u.is_c1()) throw std::invalid_argument("DzF_apply: C1 grid functions required");
    if (z.segments() != u.segments()) throw std::invalid_argument("DzF_apply: grid mismatch");
    const int T = z.segments();
    std::vector<Point> res;
    res.reserve(static_cast<std::size_t>(T) + 1);
    for (int i = 0; i <= T; ++i) {
        const double s = z.node_time(i);
        Point ri = u.derivative(i);
        ri.axpy(-r, problem.dxf(r * s, z.value(i), u.value(i)));
        res.push_back(std::move(ri));
    }
    FPair out;
    out.residual = GridFunction::c0_from_values(problem.state_space, res);
    out.initial = u.value(T / 2);
    return out;
}

double gronwall_constant(int n, const CauchyProblem& problem) {
    const double q = problem.r0 * problem.c.at(static_cast<std::size_t>(n));
    return 1.0 + (1.0 + q) * std::exp(q);
}

namespace {

// cubic Lagrange value of a C0 curve at the midpoint of panel [i, i+1]
Point midpoint_value(const GridFunction& v, int i) {
    const int T = v.segments();
    int base = std::clamp(i - 1, 0, T - 3);
    const double x = 0.5 + (i - base); // midpoint in stencil coordinates
    double w[4];
    for (int a = 0; a < 4; ++a) {
        w[a] = 1.0;
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            w[a] *= (x - b) / (a - b);
        }
    }
    Point out = w[0] * v.value(base);
    for (int a = 1; a < 4; ++a) out.axpy(w[a], v.value(base + a));
    return out;
}

// Hermite midpoint of a C1 curve on panel [i, i+1]
Point midpoint_hermite(const GridFunction& z, int i, double h) {
    Point out = 0.5 * (z.value(i) + z.value(i + 1));
    out.axpy(h / 8.0, z.derivative(i) - z.derivative(i + 1));
    return out;
}

} // namespace

GridFunction linear_right_inverse(const GridFunction& z, double r, const GridFunction& v,
                                  const Point& v0, const CauchyProblem& problem) {
    if (!z.is_c1()) throw std::invalid_argument("linear_right_inverse: z must be C1");
    if (z.segments() != v.segments())
        throw std::invalid_argument("linear_right_inverse: grid mismatch");
    const int T = z.segments();
    const int mid = T / 2;
    const double h = 2.0 / T;
    const SpacePtr& X = problem.state_space;
    const int N = X->levels();

    std::vector<Point> uval(static_cast<std::size_t>(T) + 1, Point());
    uval[static_cast<std::size_t>(mid)] = v0;

    // growth guard at 10x the Gronwall bound, per level, on the data scale
    std::vector<double> guard(static_cast<std::size_t>(N) + 1);
    {
        const auto vp = v.as_point().space()->seminorm_profile(v.as_point(), N);
        const auto v0p = X->seminorm_profile(v0, N);
        for (int n = 0; n <= N; ++n) {
            const auto ns = static_cast<std::size_t>(n);
            const double data = std::max(vp[ns], v0p[ns]);
            guard[ns] = 10.0 * gronwall_constant(n, problem) * data + 1e-300;
        }
    }

    // field of the linear equation u' = r D_x f(rs, z(s)) u + v(s)
    auto field = [&](double s, const Point& zs, const Point& vs, const Point& u) {
        Point out = vs;
        out.axpy(r, problem.dxf(r * s, zs, u));
        return out;
    };

    auto march = [&](int dir) { // dir = +1 forward, -1 backward
        const double hh = dir * h;
        for (int step = 0; step < T / 2; ++step) {
            const int i = mid + dir * step;
            const int j = i + dir;
            const int panel = std::min(i, j); // [panel, panel+1]
            const double s = z.node_time(i);
            const Point& ui = uval[static_cast<std::size_t>(i)];
            const Point zs_mid = midpoint_hermite(z, panel, h);
            const Point vs_mid = midpoint_value(v, panel);
            const Point k1 = field(s, z.value(i), v.value(i), ui);
            Point u2 = ui;
            u2.axpy(0.5 * hh, k1);
            const Point k2 = field(s + 0.5 * hh, zs_mid, vs_mid, u2);
            Point u3 = ui;
            u3.axpy(0.5 * hh, k2);
            const Point k3 = field(s + 0.5 * hh, zs_mid, vs_mid, u3);
            Point u4 = ui;
            u4.axpy(hh, k3);
            const Point k4 = field(s + hh, z.value(j), v.value(j), u4);
            Point un = ui;
            un.axpy(hh / 6.0, k1);
            un.axpy(hh / 3.0, k2);
            un.axpy(hh / 3.0, k3);
            un.axpy(hh / 6.0, k4);
            const auto prof = X->seminorm_profile(un, N);
            for (int n = 0; n <= N; ++n)
                if (prof[static_cast<std::size_t>(n)] > guard[static_cast<std::size_t>(n)])
                    throw std::runtime_error("linear_right_inverse: instability past the Gronwall bound");
            uval[static_cast<std::size_t>(j)] = std::move(un);
        }
    };
    march(+1);
    march(-1);

    // slots satisfy the slot equation exactly, making this an exact algebraic
    // right inverse of D_z F on the grid
    std::vector<Point> uder;
    uder.reserve(static_cast<std::size_t>(T) + 1);
    for (int i = 0; i <= T; ++i) {
        const double s = z.node_time(i);
        uder.push_back(field(s, z.value(i), v.value(i), uval[static_cast<std::size_t>(i)]));
    }
    return GridFunction::from_values_and_derivatives(X, uval, uder);
}

ParamProblem ode_param_problem(const CauchyProblem& problem, int segments) {
    ParamProblem pp;
    pp.name = problem.name + "-grid";
    const SpacePtr& X = problem.state_space;
    auto Zc1 = Space::curve_c1(X, segments);
    auto Zc0 = Space::curve_c0(X, segments);
    auto img = Space::pair(Zc0, X);
    pp.domain_space = Zc1;
    pp.image_space = img;

    const CauchyProblem prob = problem; // capture by value
    const Point x0 = problem.x0;
    pp.f = [prob, img, x0](const Point& zp, const ParamPoint& p) {
        FPair F = F_eval(GridFunction(zp), p.at(0), prob);
        return img->pair_make(F.residual.as_point(), F.initial - x0);
    };
    pp.right_inverse = [prob, img](const Point& zp, const ParamPoint& p, const Point& w) {
        const Point vc = img->pair_first(w);
        const Point v0 = img->pair_second(w);
        GridFunction u =
            linear_right_inverse(GridFunction(zp), p.at(0), GridFunction(vc), v0, prob);
        return u.as_point();
    };
    const int N = X->levels();
    pp.c.resize(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n)
        pp.c[static_cast<std::size_t>(n)] = gronwall_constant(n, problem);
    pp.d = 0; // eq:ode-condition loses no derivatives
    pp.x_base = GridFunction::constant(X, segments, x0).as_point();
    pp.p_base = {0.0};
    const double rmax = problem.r0 * (1.0 - 1e-9);
    pp.p_box.bounds = {{-rmax, rmax}};
    pp.domain = box_domain(pp.x_base, problem.state_box_radius);
    return pp;
}

CauchySolveResult cauchy_solve(const CauchyProblem& problem, double r, int segments, double tol) {
    if (!(r > 0.0) || !(r < problem.r0))
        throw std::domain_error("cauchy_solve: 0 < r < r0 required");
    ParamProblem pp = ode_param_problem(problem, segments);
    const TameProblem frozen = pp.at({r});
    SolveOptions opts;
    opts.k0 = frozen.reindexed_levels();
    opts.graded_tol = tol; // C1-residual of F at every level
    opts.keep_traces = false;
    SolveReport rep = solve(frozen, pp.image_space->zero(), pp.x_base, tol, opts);
    CauchySolveResult out;
    out.z = GridFunction(rep.solution);
    out.report = std::move(rep);
    return out;
}

GridFunction rk4_reference(const CauchyProblem& problem, double r, int segments) {
    if (!(r > 0.0) || !(r < problem.r0))
        throw std::domain_error("rk4_reference: 0 < r < r0 required");
    const int T = segments;
    if (T < 2 || T % 2 != 0) throw std::invalid_argument("rk4_reference: segments must be even");
    const int mid = T / 2;
    const double h = 2.0 / T;
    const SpacePtr& X = problem.state_space;

    auto field = [&](double s, const Point& zs) { return r * problem.f(r * s, zs); };
    std::vector<Point> zval(static_cast<std::size_t>(T) + 1, Point());
    zval[static_cast<std::size_t>(mid)] = problem.x0;
    auto march = [&](int dir) {
        const double hh = dir * h;
        for (int step = 0; step < T / 2; ++step) {
            const int i = mid + dir * step;
            const double s = -1.0 + 2.0 * i / T;
            const Point& zi = zval[static_cast<std::size_t>(i)];
            const Point k1 = field(s, zi);
            Point z2 = zi;
            z2.axpy(0.5 * hh, k1);
            const Point k2 = field(s + 0.5 * hh, z2);
            Point z3 = zi;
            z3.axpy(0.5 * hh, k2);
            const Point k3 = field(s + 0.5 * hh, z3);
            Point z4 = zi;
            z4.axpy(hh, k3);
            const Point k4 = field(s + hh, z4);
            Point zn = zi;
            zn.axpy(hh / 6.0, k1);
            zn.axpy(hh / 3.0, k2);
            zn.axpy(hh / 3.0, k3);
            zn.axpy(hh / 6.0, k4);
            zval[static_cast<std::size_t>(i + dir)] = std::move(zn);
        }
    };
    march(+1);
    march(-1);

    std::vector<Point> zder;
    zder.reserve(static_cast<std::size_t>(T) + 1);
    for (int i = 0; i <= T; ++i)
        zder.push_back(field(-1.0 + 2.0 * i / T, zval[static_cast<std::size_t>(i)]));
    return GridFunction::from_values_and_derivatives(X, zval, zder);
}

std::vector<std::string> ode_problem_names() {
    return {"linear-scalar", "linear-fourier", "logistic-scalar"};
}

CauchyProblem make_ode_problem(const std::string& name) {
    CauchyProblem pr;
    pr.name = name;
    if (name == "linear-scalar") {
        auto X = Space::euclidean(1, 8);
        pr.state_space = X;
        pr.f = [](double, const Point& x) { return x; };
        pr.dxf = [](double, const Point&, const Point& h) { return h; };
        pr.c = std::vector<double>(9, 1.0);
        pr.r0 = 1.0;
        pr.x0 = X->point_real({1.0});
        pr.exact = [X](double r, double s) { return X->point_real({std::exp(r * s)}); };
        return pr;
    }
    if (name == "linear-fourier") {
        auto X = Space::fourier(8, 8);
        pr.state_space = X;
        pr.f = [](double, const Point& u) { return 0.5 * u; };
        pr.dxf = [](double, const Point&, const Point& h) { return 0.5 * h; };
        pr.c = std::vector<double>(9, 0.5);
        pr.r0 = 1.0;
        pr.state_box_radius = 1e3; // mode-1 content reaches ~2^8 at the top level
        pr.x0 = X->fourier_mode(1, cplx(0.5, 0.0)) + X->fourier_mode(-1, cplx(0.5, 0.0));
        const Point x0 = pr.x0;
        pr.exact = [x0](double r, double s) { return std::exp(0.5 * r * s) * x0; };
        return pr;
    }
    if (name == "logistic-scalar") {
        auto X = Space::euclidean(1, 8);
        pr.state_space = X;
        pr.f = [X](double, const Point& x) {
            const double v = x.raw()[0].real();
            return X->point_real({v * (1.0 - v)});
        };
        pr.dxf = [X](double, const Point& x, const Point& h) {
            const double v = x.raw()[0].real();
            const double hv = h.raw()[0].real();
            return X->point_real({(1.0 - 2.0 * v) * hv});
        };
        pr.c = std::vector<double>(9, 1.6); // |1-2x| <= 1.6 on the state box
        pr.r0 = 0.5;
        pr.x0 = X->point_real({0.1});
        pr.state_box_radius = 0.4;
        pr.exact = [X](double r, double s) {
            const double e = std::exp(r * s);
            return X->point_real({0.1 * e / (1.0 + 0.1 * (e - 1.0))});
        };
        return pr;
    }
    throw std::invalid_argument("unknown ode problem: " + name);
}

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string curve_csv(const GridFunction& z) {
    const int T = z.segments();
    const SpacePtr& base = z.space()->base();
    const int N = base->levels();
    std::string out = "node,time,level,value_seminorm,derivative_seminorm\n";
    for (int i = 0; i <= T; ++i) {
        const Point v = z.value(i);
        const auto vp = base->seminorm_profile(v, N);
        std::vector<double> dp;
        if (z.is_c1()) dp = base->seminorm_profile(z.derivative(i), N);
        for (int n = 0; n <= N; ++n) {
            out += std::to_string(i);
            out += ',';
            out += fmt17(z.node_time(i));
            out += ',';
            out += std::to_string(n);
            out += ',';
            out += fmt17(vp[static_cast<std::size_t>(n)]);
            out += ',';
            out += z.is_c1() ? fmt17(dp[static_cast<std::size_t>(n)]) : std::string("");
            out += '\n';
        }
    }
    return out;
}

nlohmann::json curve_json(const GridFunction& z) {
    nlohmann::json j;
    j["space"] = z.space()->descriptor();
    j["segments"] = z.segments();
    nlohmann::json nodes = nlohmann::json::array();
    const int T = z.segments();
    for (int i = 0; i <= T; ++i) {
        nlohmann::json node;
        node["time"] = z.node_time(i);
        std::vector<double> re, im;
        for (cplx c : z.value(i).coeffs()) {
            re.push_back(c.real());
            im.push_back(c.imag());
        }
        node["re"] = re;
        node["im"] = im;
        if (z.is_c1()) {
            std::vector<double> dre, dim;
            for (cplx c : z.derivative(i).coeffs()) {
                dre.push_back(c.real());
                dim.push_back(c.imag());
            }
            node["d_re"] = dre;
            node["d_im"] = dim;
        }
        nodes.push_back(std::move(node));
    }
    j["nodes"] = std::move(nodes);
    return j;
}

} // namespace frechet
