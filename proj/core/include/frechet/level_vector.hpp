#pragma once

#include <cstddef>
#include <vector>

namespace frechet {

// Truncated element of the positive-sequence cone: a nonnegative profile
// (s_0, ..., s_L) indexing Pi_s balls and tame profiles.  Entries beyond the
// stored length are unconstrained (treated as absent, not as zero).
class LevelVector {
public:
    LevelVector() = default;
    explicit LevelVector(std::vector<double> entries);
    static LevelVector zeros(int levels);
    static LevelVector constant(int levels, double value);

    int levels() const { return static_cast<int>(entries_.size()) - 1; }
    double operator[](int n) const { return entries_.at(static_cast<std::size_t>(n)); }
    const std::vector<double>& entries() const { return entries_; }

    // |s| = max_n 2^{-n} s_n / (1 + s_n), always in [0, 1).
    double magnitude() const;

    // supp s = { n : s_n > 0 }, computed on demand.
    std::vector<int> support() const;
    bool support_empty() const;

    LevelVector scaled(double factor) const;

private:
    std::vector<double> entries_;
};

} // namespace frechet
