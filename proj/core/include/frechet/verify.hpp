#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "frechet/calculus.hpp"
#include "frechet/solver.hpp"

namespace frechet {

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

// One CSV row per sample: the measured sides of the checked inequality and
// the slack lhs - rhs (positive means violation).
struct SampleRow {
    std::size_t index = 0;
    std::string kind;
    std::vector<double> inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool violation = false;
    bool inconclusive = false;
};

struct VerificationReport {
    std::string claim;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::vector<SampleRow> rows;
    std::vector<SampleRow> violations; // sorted by slack, worst first
    std::size_t inconclusive_count = 0;
    double max_slack = 0.0;
    Verdict verdict = Verdict::pass;

    void finalize(); // sorts violations, sets max_slack and the verdict
    std::string csv() const;
    nlohmann::json summary() const;
};

struct SurjectivityOptions {
    double tol = 1e-6;             // slack allowed on rho(x, x_hat) <= r + tol
    double solve_tol_factor = 1e-4; // solver tolerance = factor * r
    std::uint64_t seed = 0;
};

// Samples targets with rho'(f(x), y) < r and checks that solve returns a
// preimage with rho_X(x, x_hat) <= r + tol.  A failed solve inside the
// promised radius counts as a violation.
VerificationReport verify_surjectivity(const TameProblem& problem, const Point& x, double r,
                                       int samples, const SurjectivityOptions& opts = {});

struct InverseLipschitzOptions {
    double rel_tol = 1e-6;
    std::uint64_t seed = 0;
};

// Samples pairs u, v in f(V) for V the rho-ball of radius m_U(x_ref)/4 and
// checks ||f^{-1}u - f^{-1}v||_n <= c_n ||u-v||_{n+d} (1 + rel_tol) at every
// n <= N-d.  Solve failures make the report inconclusive, not failed.
VerificationReport verify_inverse_lipschitz(const TameProblem& problem, int pairs,
                                            const InverseLipschitzOptions& opts = {});

struct InjectivityOptions {
    double rel_tol = 1e-6;
    std::uint64_t seed = 0;
};

struct InjectivityReport {
    VerificationReport base;
    std::vector<double> c_est; // max sampled ||h||_n / ||f'(x)h||_n per level
    double cprime_est = 0.0;   // max sampled ratio of the eqq2 quotient
    double delta_bound = 0.0;  // 1/(2 c_r c'_r)
    double delta = 0.0;        // delta_bound / 2
    double c_eqq4 = 0.0;       // (1/c_r - 2 delta c'_r)^{-1}
    bool verdict = false;
};

// Checks the two injectivity sufficient conditions with the problem's
// declared constants, then the derived two-point estimate
// ||x0-x1||_r <= c_eqq4 ||f(x0)-f(x1)||_r on pairs from the delta-ball.
InjectivityReport verify_injectivity_conditions(const TameProblem& problem, int samples,
                                                const InjectivityOptions& opts = {});

struct LipschitzPathOptions {
    double rel_tol = 1e-6;
    int interior_points = 5;
    std::uint64_t seed = 0;
};

struct LipschitzPathReport {
    VerificationReport base; // eq:invert cross-check rows along the path
    DiniMvtReport dini;      // on the normalized path g / (c_n ||v-u||_{n+d})
    bool pass = false;
};

// Builds g(lambda) = ||f^{-1}((1-lambda)u + lambda v) - f^{-1}(u)||_n (every
// evaluation is a solve), normalizes by c_n ||v-u||_{n+d} and runs the Dini
// mean-value check; cross-validates the inverse bound along the whole path.
LipschitzPathReport verify_lipschitz_path(const TameProblem& problem, const Point& u,
                                          const Point& v, int n,
                                          const LipschitzPathOptions& opts = {});

} // namespace frechet
