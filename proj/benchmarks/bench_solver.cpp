#include <benchmark/benchmark.h>

#include "frechet/solver.hpp"

using namespace frechet;

static void BM_orbit_scalar(benchmark::State& state) {
    auto pr = make_problem("scalar-quadratic");
    auto X = pr.domain_space;
    const Point ybar = X->point_real({0.3});
    const double eps = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto r = run_orbit(pr, X->zero(), ybar, StepParams::make(eps, 0));
        benchmark::DoNotOptimize(r.trace.p);
    }
    state.counters["steps"] = static_cast<double>(2.0 / eps);
}
BENCHMARK(BM_orbit_scalar)->Arg(10)->Arg(100);

static void BM_solve_scalar(benchmark::State& state) {
    auto pr = make_problem("scalar-quadratic");
    auto X = pr.domain_space;
    const Point y = X->point_real({0.5});
    for (auto _ : state) {
        auto rep = solve(pr, y, X->zero(), 1e-10);
        benchmark::DoNotOptimize(rep.residual_rho);
    }
}
BENCHMARK(BM_solve_scalar);

static void BM_solve_fourier_quadratic(benchmark::State& state) {
    auto pr = make_problem("fourier-quadratic");
    auto X = pr.domain_space;
    const Point y = X->fourier_mode(1, cplx(2.5e-9, 0.0)) + X->fourier_mode(-1, cplx(2.5e-9, 0.0));
    SolveOptions opts;
    opts.k0 = 16;
    for (auto _ : state) {
        auto rep = solve(pr, y, X->zero(), 1e-14, opts);
        benchmark::DoNotOptimize(rep.residual_rho);
    }
}
BENCHMARK(BM_solve_fourier_quadratic);

static void BM_right_inverse_wide(benchmark::State& state) {
    auto pr = make_fourier_quadratic_wide();
    auto X = pr.domain_space;
    const Point u = X->fourier_mode(1, cplx(0.045, 0.0)) + X->fourier_mode(-1, cplx(0.045, 0.0));
    const Point v = X->fourier_mode(1, cplx(0.01, 0.0)) + X->fourier_mode(-1, cplx(0.01, 0.0));
    for (auto _ : state) benchmark::DoNotOptimize(pr.right_inverse(u, v));
}
BENCHMARK(BM_right_inverse_wide);
