#pragma once

#include <functional>
#include <random>
#include <vector>

#include "frechet/level_vector.hpp"
#include "frechet/space.hpp"

namespace frechet {

// A truncated seminorm family: N+1 evaluators ||.||_n, n = 0..N.  The
// canonical family of a model space, or a reindexed view |||.|||_n =
// c_n ||.||_{n+d} of one (truncation drops to N-d).
class SeminormFamily {
public:
    SeminormFamily(int levels, std::function<double(const Point&, int)> evaluator);

    static SeminormFamily of_space(const SpacePtr& space);

    int levels() const { return levels_; }
    double operator()(const Point& x, int n) const;

    // all levels 0..kmax at once
    std::vector<double> profile(const Point& x, int kmax) const;

    // |||.|||_n = c[n] * ||.||_{n+d}; requires d <= N and c[n] > 0 for
    // n = 0..N-d.
    SeminormFamily reindexed(const std::vector<double>& c, int d) const;

private:
    int levels_;
    std::function<double(const Point&, int)> eval_;
    bool space_backed_ = false;
    SpacePtr space_; // set when the family is a space's canonical family
};

// reindex operation in free-function form
SeminormFamily reindex(const SeminormFamily& base, const std::vector<double>& c, int d);

// Space descriptor with an optional reindexing:
//   {"model": "euclidean"|"fourier", "dim"|"modes": int, "levels": int,
//    "reindex": {"c": [...], "d": int}}
struct SpaceSpec {
    SpacePtr space;
    std::vector<double> reindex_c; // empty = no reindexing
    int reindex_d = 0;

    SeminormFamily family() const;
    nlohmann::json to_json() const;
    static SpaceSpec from_json(const nlohmann::json& j);
};

// metric of the seminorm scale: max_n 2^{-n} ||x-y||_n / (1 + ||x-y||_n)
double rho(const SeminormFamily& space, const Point& x, const Point& y);
// truncated variant max_{0<=n<=k}
double rho_k(const SeminormFamily& space, const Point& x, const Point& y, int k);
// |x|_k = max_{0<=i<=k} ||x||_i
double graded_norm(const SeminormFamily& space, const Point& x, int k);
// ||x||_n <= s_n for every stored level (closed condition)
bool pi_contains(const SeminormFamily& space, const Point& x, const LevelVector& s);
// sup_{n in supp s} ||x||_n / s_n; +inf when some level outside supp s is hit
double s_norm(const SeminormFamily& space, const Point& x, const LevelVector& s);

// profile-based variants used by hot paths and by LevelVector-level tests
double rho_of_profile(const std::vector<double>& diff_profile);
double rho_k_of_profile(const std::vector<double>& diff_profile, int k);

// Coefficientwise uniform draw rescaled until pi_contains holds (cap 1000).
Point sample_in_pi_ball(const SeminormFamily& family, const SpacePtr& space, const LevelVector& s,
                        std::mt19937_64& rng);

// Uniform draw in the closed rho-ball of the given radius around center:
// a pi-ball sample rescaled so its rho-distance hits a uniform fraction of
// the radius.  radius must be < 1.
Point sample_in_rho_ball(const SeminormFamily& family, const Point& center, double radius,
                         std::mt19937_64& rng);

} // namespace frechet
