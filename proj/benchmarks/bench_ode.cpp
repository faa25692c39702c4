#include <benchmark/benchmark.h>

#include "frechet/ode.hpp"

using namespace frechet;

static void BM_linear_right_inverse(benchmark::State& state) {
    auto pr = make_ode_problem("linear-scalar");
    auto X = pr.state_space;
    const int T = static_cast<int>(state.range(0));
    auto z = GridFunction::constant(X, T, pr.x0);
    auto v = GridFunction::c0_from_values(
        X, std::vector<Point>(static_cast<std::size_t>(T) + 1, X->zero()));
    const Point v0 = X->point_real({1.0});
    for (auto _ : state) benchmark::DoNotOptimize(linear_right_inverse(z, 0.5, v, v0, pr));
}
BENCHMARK(BM_linear_right_inverse)->Arg(200)->Arg(2000);

static void BM_cauchy_solve_scalar(benchmark::State& state) {
    auto pr = make_ode_problem("linear-scalar");
    const int T = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto res = cauchy_solve(pr, 0.1, T, 1e-9);
        benchmark::DoNotOptimize(res.report.residual_rho);
    }
}
BENCHMARK(BM_cauchy_solve_scalar)->Arg(200)->Arg(2000);

static void BM_rk4_reference(benchmark::State& state) {
    auto pr = make_ode_problem("linear-fourier");
    const int T = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rk4_reference(pr, 0.3, T));
}
BENCHMARK(BM_rk4_reference)->Arg(200)->Arg(2000);
