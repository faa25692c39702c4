#include <doctest.h>

#include <cmath>
#include <random>

#include "frechet/parallel.hpp"
#include "frechet/problem.hpp"
#include "frechet/seminorm_family.hpp"

using namespace frechet;

namespace {

// dyadic coefficients keep sums and differences exact in double arithmetic
Point random_dyadic(const SpacePtr& space, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> grid(-2048, 2048);
    std::vector<cplx> c(space->coeff_count());
    const bool complex_model = space->model() == Space::Model::fourier;
    for (auto& v : c) {
        const double re = grid(rng) * 0x1p-10;
        const double im = complex_model ? grid(rng) * 0x1p-10 : 0.0;
        v = cplx(re, im);
    }
    return space->point(std::move(c));
}

LevelVector random_profile(int levels, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.01, 3.0);
    std::vector<double> s(static_cast<std::size_t>(levels) + 1);
    for (auto& v : s) v = u(rng);
    return LevelVector(std::move(s));
}

} // namespace

TEST_CASE("seminorm basics on the euclidean model") {
    auto X = Space::euclidean(1, 16);
    auto F = SeminormFamily::of_space(X);
    CHECK(F(X->zero(), 3) == 0.0);
    auto x = X->point_real({-2.0});
    for (int n = 0; n <= 16; ++n) CHECK(F(x, n) == doctest::Approx(2.0));
    CHECK_THROWS_AS(F(x, 17), std::out_of_range);
    CHECK_THROWS_AS(F(x, -1), std::out_of_range);
}

TEST_CASE("fourier seminorms weight modes by (1+|j|)^n") {
    auto X = Space::fourier(2, 8);
    auto F = SeminormFamily::of_space(X);
    auto u = X->fourier_mode(1, cplx(1.0, 0.0));
    CHECK(F(u, 2) == doctest::Approx(4.0)); // (1+1)^2
    auto one = X->fourier_mode(0, cplx(1.0, 0.0));
    for (int n = 0; n <= 8; ++n) CHECK(F(one, n) == doctest::Approx(1.0));
    // graded scale: nondecreasing in n
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_dyadic(X, rng);
        const auto p = X->seminorm_profile(x, 8);
        for (int n = 0; n + 1 <= 8; ++n) CHECK(p[n] <= p[n + 1] * (1 + 1e-15));
    }
}

TEST_CASE("rho formula and truncation") {
    auto X = Space::euclidean(1, 16);
    auto F = SeminormFamily::of_space(X);
    auto x = X->point_real({1.0});
    auto y = X->zero();
    // constant profile 1: max at n = 0 gives 1/2
    CHECK(rho(F, x, y) == doctest::Approx(0.5));
    CHECK(rho(F, x, x) == 0.0);
    auto z = X->point_real({3.0});
    CHECK(rho(F, z, y) == doctest::Approx(0.75));

    // rho_k on the two-level profile (0, 1): only the n = 0 term at k = 0,
    // the 2^-1 * 1/2 term at k = 1
    CHECK(rho_k_of_profile({0.0, 1.0}, 0) == 0.0);
    CHECK(rho_k_of_profile({0.0, 1.0}, 1) == doctest::Approx(0.25));

    auto Y = Space::fourier(1, 1);
    auto G = SeminormFamily::of_space(Y);
    auto u = Y->fourier_mode(1, cplx(0.5, 0.0)); // profile (1/2, 1)
    CHECK(rho_k(G, u, Y->zero(), 0) == doctest::Approx(1.0 / 3.0));
    CHECK(rho_k(G, u, Y->zero(), 1) == doctest::Approx(rho(G, u, Y->zero())));
    CHECK_THROWS_AS(rho_k(G, u, Y->zero(), 5), std::out_of_range);
}

TEST_CASE("rho_k lower-bounds rho within 2^-k") {
    auto X = Space::fourier(8, 12);
    auto F = SeminormFamily::of_space(X);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_dyadic(X, rng);
        auto y = random_dyadic(X, rng);
        const double full = rho(F, x, y);
        for (int k = 0; k <= 12; ++k) {
            const double trunc = rho_k(F, x, y, k);
            CHECK(trunc <= full + 1e-15);
            CHECK(full - trunc <= std::pow(2.0, -k) + 1e-15);
        }
    }
}

TEST_CASE("graded norm is a running max") {
    auto X = Space::fourier(2, 2);
    auto F = SeminormFamily::of_space(X);
    CHECK(graded_norm(F, X->zero(), 2) == 0.0);
    // profile (2, 1, 5) is impossible on a graded scale; use the direct
    // profile helper instead
    CHECK(rho_of_profile({2.0, 1.0, 5.0}) == doctest::Approx(std::max({2.0 / 3.0, 0.25, 5.0 / 12.0})));
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_dyadic(X, rng);
        double running = 0.0;
        for (int k = 0; k <= 2; ++k) {
            running = std::max(running, F(x, k));
            CHECK(graded_norm(F, x, k) == doctest::Approx(running));
        }
    }
}

TEST_CASE("magnitude of level vectors") {
    CHECK(LevelVector::zeros(16).magnitude() == 0.0);
    CHECK(LevelVector::constant(16, 1.0).magnitude() == doctest::Approx(0.5));
    LevelVector s({0.0, 1.0, 0.0});
    CHECK(s.magnitude() == doctest::Approx(0.25));
    CHECK(s.support() == std::vector<int>{1});
    CHECK_THROWS_AS(LevelVector({-1.0}), std::invalid_argument);
    // magnitude always below 1
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_profile(16, rng);
        CHECK(p.magnitude() < 1.0);
    }
}

TEST_CASE("pi_contains includes the boundary") {
    auto X = Space::euclidean(1, 4);
    auto F = SeminormFamily::of_space(X);
    LevelVector s = LevelVector::constant(4, 1.0);
    CHECK(pi_contains(F, X->zero(), s));
    CHECK(pi_contains(F, X->point_real({1.0}), s)); // profile equals s exactly
    CHECK_FALSE(pi_contains(F, X->point_real({2.0}), s));
}

TEST_CASE("s_norm: unit ball identity and escape to infinity") {
    auto X = Space::euclidean(1, 4);
    auto F = SeminormFamily::of_space(X);
    LevelVector s = LevelVector::constant(4, 1.0);
    CHECK(s_norm(F, X->zero(), s) == 0.0);
    CHECK(s_norm(F, X->point_real({1.0}), s) == doctest::Approx(1.0));
    CHECK(s_norm(F, X->point_real({2.0}), s) == doctest::Approx(2.0));
    CHECK_THROWS_AS(s_norm(F, X->zero(), LevelVector::zeros(4)), std::domain_error);

    // a level outside the support with mass there puts x outside X_s
    auto Y = Space::fourier(1, 1);
    auto G = SeminormFamily::of_space(Y);
    LevelVector partial({1.0, 0.0});
    auto u = Y->fourier_mode(1, cplx(1.0, 0.0));
    CHECK(std::isinf(s_norm(G, u, partial)));

    // identity  pi_contains(x, s) <=> s_norm(x, s) <= 1  on finite draws
    std::mt19937_64 rng(13);
    auto Z = Space::fourier(4, 6);
    auto H = SeminormFamily::of_space(Z);
    for (int trial = 0; trial < 200; ++trial) {
        auto prof = random_profile(6, rng);
        auto x = random_dyadic(Z, rng);
        const double sn = s_norm(H, x, prof);
        if (std::isinf(sn)) continue;
        CHECK(pi_contains(H, x, prof) == (sn <= 1.0));
    }
}

TEST_CASE("reindex: c_n ||.||_{n+d} with truncation N-d") {
    auto X = Space::fourier(4, 6);
    auto F = SeminormFamily::of_space(X);
    std::mt19937_64 rng(17);
    auto x = random_dyadic(X, rng);

    auto same = F.reindexed(std::vector<double>(7, 1.0), 0);
    CHECK(same.levels() == 6);
    for (int n = 0; n <= 6; ++n) CHECK(same(x, n) == doctest::Approx(F(x, n)));

    auto shift = F.reindexed(std::vector<double>(6, 1.0), 1);
    CHECK(shift.levels() == 5);
    CHECK(shift(x, 0) == doctest::Approx(F(x, 1)));

    auto scaled = reindex(F, {2.0, 3.0, 1.0, 1.0, 1.0, 1.0}, 1);
    CHECK(scaled(x, 0) == doctest::Approx(2.0 * F(x, 1)));
    CHECK(scaled(x, 1) == doctest::Approx(3.0 * F(x, 2)));

    CHECK_THROWS_AS(F.reindexed(std::vector<double>(7, 1.0), 7), std::out_of_range);
    CHECK_THROWS_AS(F.reindexed({1.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(F.reindexed(std::vector<double>(7, -1.0), 0), std::invalid_argument);
}

TEST_CASE("model arithmetic: derivative, antiderivative, products") {
    auto X = Space::fourier(4, 6);
    auto one = X->fourier_mode(0, cplx(1.0, 0.0));
    CHECK(X->derivative(one).is_zero());

    auto u = X->fourier_mode(1, cplx(1.0, 0.0));
    auto du = X->derivative(u);
    for (int n = 0; n <= 5; ++n) {
        CHECK(X->seminorm(du, n) == doctest::Approx(std::pow(2.0, n)));
        CHECK(X->seminorm(du, n) <= X->seminorm(u, n + 1));
    }

    // pointwise_mul(1, u) = u
    std::mt19937_64 rng(23);
    auto w = random_dyadic(X, rng);
    CHECK(X->pointwise_mul(one, w).same_coeffs(w));

    // derivative of the mean-zero antiderivative restores u minus its mean
    auto v = random_dyadic(X, rng);
    auto anti = X->antiderivative_meanzero(v);
    auto back = X->derivative(anti);
    auto v_meanzero = v;
    v_meanzero.raw()[4] = cplx(0.0, 0.0); // drop mode 0 (index M = 4)
    for (std::size_t i = 0; i < back.raw().size(); ++i)
        CHECK(std::abs(back.raw()[i] - v_meanzero.raw()[i]) < 1e-12);

    // cos^2 = 1/2 + cos(2 theta)/2 in coefficients
    auto cosu = X->fourier_mode(1, cplx(0.5, 0.0)) + X->fourier_mode(-1, cplx(0.5, 0.0));
    auto sq = X->pointwise_mul(cosu, cosu);
    CHECK(std::abs(sq.raw()[4] - cplx(0.5, 0.0)) < 1e-15);  // mode 0
    CHECK(std::abs(sq.raw()[6] - cplx(0.25, 0.0)) < 1e-15); // mode 2
    // product truncation drops modes beyond M
    auto hi = X->fourier_mode(4, cplx(1.0, 0.0));
    auto hp = X->pointwise_mul(hi, hi); // mode 8 discarded
    CHECK(hp.is_zero());
}

TEST_CASE("metric axioms on seeded random triples") {
    auto X = Space::fourier(6, 10);
    auto F = SeminormFamily::of_space(X);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        auto x = random_dyadic(X, rng);
        auto y = random_dyadic(X, rng);
        auto z = random_dyadic(X, rng);
        const double xy = rho(F, x, y);
        CHECK(rho(F, y, x) == xy); // symmetry exact
        CHECK(xy <= rho(F, x, z) + rho(F, z, y) + 1e-12);
        CHECK((xy == 0.0) == x.same_coeffs(y));
        // translation invariance, exact on dyadic coefficients
        CHECK(rho(F, x + z, y + z) == xy);
    }
}

TEST_CASE("Pi-ball sampling and the magnitude inclusion") {
    auto X = Space::fourier(4, 8);
    auto F = SeminormFamily::of_space(X);
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> cdist(1.0, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
        auto s = random_profile(8, rng);
        auto x = sample_in_pi_ball(F, X, s, rng);
        CHECK(pi_contains(F, x, s));
        // scaling a Pi_s sample by c >= 1 stays within rho <= c|s|
        const double c = cdist(rng);
        CHECK(rho(F, c * x, X->zero()) <= c * s.magnitude() + 1e-12);
    }
    // degenerate profile: only the zero point fits
    LevelVector withzero({1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
    CHECK(sample_in_pi_ball(F, X, withzero, rng).is_zero());
}

TEST_CASE("closure criterion at finite truncation") {
    // a_k -> x in every graded norm forces min rho -> 0
    auto X = Space::fourier(4, 8);
    auto F = SeminormFamily::of_space(X);
    std::mt19937_64 rng(61);
    auto x = random_dyadic(X, rng);
    auto e = X->fourier_mode(0, cplx(1.0, 0.0));
    double best = 1.0;
    for (int k = 1; k <= 25; ++k) {
        Point a = x;
        a.axpy(std::pow(0.5, k), e); // exact dyadic arithmetic
        CHECK(graded_norm(F, x - a, 8) == std::pow(0.5, k));
        best = std::min(best, rho(F, x, a));
    }
    CHECK(best < 1e-3);
}

TEST_CASE("space descriptors round-trip") {
    auto X = Space::fourier(64, 16);
    auto j = X->descriptor();
    CHECK(j["model"] == "fourier");
    CHECK(j["modes"] == 64);
    CHECK(j["levels"] == 16);
    auto Y = Space::from_descriptor(j);
    CHECK(Y->same(*X));

    auto E = Space::euclidean(3, 8);
    CHECK(Space::from_descriptor(E->descriptor())->same(*E));
    CHECK_THROWS_AS(Space::from_descriptor({{"model", "nope"}}), std::invalid_argument);
}

TEST_CASE("mismatched spaces raise type errors") {
    auto X = Space::euclidean(1, 16);
    auto Y = Space::euclidean(2, 16);
    auto F = SeminormFamily::of_space(X);
    CHECK_THROWS_AS(rho(F, X->zero(), Y->zero()), std::invalid_argument);
    CHECK_THROWS_AS(X->zero() + Y->zero(), std::invalid_argument);
}

TEST_CASE("box domains: membership and m_U") {
    auto X = Space::euclidean(1, 16);
    auto box = box_domain(X->zero(), 1.0);
    CHECK(box.contains(X->point_real({0.5})));
    CHECK_FALSE(box.contains(X->point_real({1.0}))); // open box
    // all faces give gap 1 discounted by 2^-n; the n = 0 face wins
    CHECK(box.m_U(X->zero()) == doctest::Approx(0.5 / std::pow(2.0, 0)).epsilon(1e-12));
    CHECK(box.m_U(X->point_real({2.0})) == 0.0);

    auto Y = Space::fourier(2, 2);
    auto fbox = box_domain(Y->zero(), 1.0);
    // three faces, gap 1 each: min is 2^-2 * 1/2
    CHECK(fbox.m_U(Y->zero()) == doctest::Approx(0.125));
}

TEST_CASE("space specs carry the optional reindexing") {
    SpaceSpec spec;
    spec.space = Space::fourier(8, 6);
    spec.reindex_c = {2.0, 3.0, 1.0, 1.0, 1.0, 1.0};
    spec.reindex_d = 1;
    const auto j = spec.to_json();
    CHECK(j.contains("reindex"));
    const SpaceSpec back = SpaceSpec::from_json(j);
    CHECK(back.space->same(*spec.space));
    CHECK(back.reindex_c == spec.reindex_c);
    CHECK(back.reindex_d == 1);
    auto fam = back.family();
    CHECK(fam.levels() == 5);
    auto u = spec.space->fourier_mode(1, cplx(1.0, 0.0));
    CHECK(fam(u, 0) == doctest::Approx(2.0 * 2.0)); // 2 * ||u||_1

    SpaceSpec plain;
    plain.space = Space::euclidean(2, 4);
    const SpaceSpec back2 = SpaceSpec::from_json(plain.to_json());
    CHECK(back2.reindex_c.empty());
    CHECK(back2.family().levels() == 4);
}

TEST_CASE("shared immutable values tolerate concurrent evaluation") {
    auto X = Space::fourier(8, 8);
    auto F = SeminormFamily::of_space(X);
    std::mt19937_64 rng(97);
    const Point a = random_dyadic(X, rng);
    const Point b = random_dyadic(X, rng);
    const double expect = rho(F, a, b);
    std::vector<double> got(64, 0.0);
    parallel_for(got.size(), [&](std::size_t i) {
        got[i] = (i % 2 == 0) ? rho(F, a, b) : rho(F, b, a);
    });
    for (double g : got) CHECK(g == expect);
}
