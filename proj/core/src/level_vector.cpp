#include "frechet/level_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frechet {

LevelVector::LevelVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty())
        throw std::invalid_argument("LevelVector: at least one entry required");
    for (double e : entries_)
        if (!(e >= 0.0))
            throw std::invalid_argument("LevelVector: entries must be nonnegative");
}

LevelVector LevelVector::zeros(int levels) {
    return LevelVector(std::vector<double>(static_cast<std::size_t>(levels) + 1, 0.0));
}

LevelVector LevelVector::constant(int levels, double value) {
    return LevelVector(std::vector<double>(static_cast<std::size_t>(levels) + 1, value));
}

double LevelVector::magnitude() const {
    double m = 0.0;
    double weight = 1.0;
    for (double e : entries_) {
        m = std::max(m, weight * e / (1.0 + e));
        weight *= 0.5;
    }
    return m;
}

std::vector<int> LevelVector::support() const {
    std::vector<int> supp;
    for (int n = 0; n <= levels(); ++n)
        if (entries_[static_cast<std::size_t>(n)] > 0.0) supp.push_back(n);
    return supp;
}

bool LevelVector::support_empty() const {
    return std::all_of(entries_.begin(), entries_.end(), [](double e) { return e == 0.0; });
}

LevelVector LevelVector::scaled(double factor) const {
    if (!(factor >= 0.0)) throw std::invalid_argument("LevelVector::scaled: factor must be >= 0");
    std::vector<double> r(entries_);
    for (double& e : r) e *= factor;
    return LevelVector(std::move(r));
}

} // namespace frechet
