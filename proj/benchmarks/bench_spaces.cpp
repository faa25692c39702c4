#include <benchmark/benchmark.h>

#include <random>

#include "frechet/seminorm_family.hpp"

using namespace frechet;

namespace {

Point random_point(const SpacePtr& X, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> c(X->coeff_count());
    for (auto& v : c) v = cplx(u(rng), u(rng));
    return X->point(std::move(c));
}

} // namespace

static void BM_rho_fourier(benchmark::State& state) {
    auto X = Space::fourier(static_cast<int>(state.range(0)), 16);
    auto F = SeminormFamily::of_space(X);
    std::mt19937_64 rng(1);
    const Point a = random_point(X, rng);
    const Point b = random_point(X, rng);
    for (auto _ : state) benchmark::DoNotOptimize(rho(F, a, b));
}
BENCHMARK(BM_rho_fourier)->Arg(16)->Arg(64);

static void BM_seminorm_profile(benchmark::State& state) {
    auto X = Space::fourier(64, 16);
    std::mt19937_64 rng(1);
    const Point a = random_point(X, rng);
    for (auto _ : state) benchmark::DoNotOptimize(X->seminorm_profile(a, 16));
}
BENCHMARK(BM_seminorm_profile);

static void BM_pointwise_mul(benchmark::State& state) {
    auto X = Space::fourier(static_cast<int>(state.range(0)), 16);
    std::mt19937_64 rng(1);
    const Point a = random_point(X, rng);
    const Point b = random_point(X, rng);
    for (auto _ : state) benchmark::DoNotOptimize(X->pointwise_mul(a, b));
}
BENCHMARK(BM_pointwise_mul)->Arg(16)->Arg(64);

static void BM_pi_ball_sample(benchmark::State& state) {
    auto X = Space::fourier(64, 16);
    auto F = SeminormFamily::of_space(X);
    std::mt19937_64 rng(1);
    const LevelVector s = LevelVector::constant(16, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(sample_in_pi_ball(F, X, s, rng));
}
BENCHMARK(BM_pi_ball_sample);
