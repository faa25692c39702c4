#include "frechet/seminorm_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace frechet {

namespace {

void check_level_range(int n, int levels, const char* what) {
    if (n < 0 || n > levels)
        throw std::out_of_range(std::string(what) + ": level " + std::to_string(n) +
                                " out of range 0.." + std::to_string(levels));
}

// uniform coefficients in [-1,1] (complex components where the model is
// complex-valued, real components for euclidean blocks)
void fill_uniform(const Space& space, std::vector<cplx>& out, std::size_t offset,
                  std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    switch (space.model()) {
    case Space::Model::euclidean:
        for (std::size_t i = 0; i < space.coeff_count(); ++i) out[offset + i] = cplx(u(rng), 0.0);
        return;
    case Space::Model::fourier:
        for (std::size_t i = 0; i < space.coeff_count(); ++i) {
            const double re = u(rng);
            const double im = u(rng);
            out[offset + i] = cplx(re, im);
        }
        return;
    case Space::Model::curve_c0:
    case Space::Model::curve_c1: {
        const std::size_t bc = space.base()->coeff_count();
        const std::size_t blocks = space.coeff_count() / bc;
        for (std::size_t b = 0; b < blocks; ++b)
            fill_uniform(*space.base(), out, offset + b * bc, rng);
        return;
    }
    case Space::Model::pair:
        fill_uniform(*space.first(), out, offset, rng);
        fill_uniform(*space.second(), out, offset + space.first()->coeff_count(), rng);
        return;
    }
}

Point random_raw_point(const SpacePtr& space, std::mt19937_64& rng) {
    std::vector<cplx> c(space->coeff_count(), cplx(0.0, 0.0));
    fill_uniform(*space, c, 0, rng);
    return space->point(std::move(c));
}

} // namespace

SeminormFamily::SeminormFamily(int levels, std::function<double(const Point&, int)> evaluator)
    : levels_(levels), eval_(std::move(evaluator)) {
    if (levels_ < 0) throw std::invalid_argument("SeminormFamily: levels must be >= 0");
    if (!eval_) throw std::invalid_argument("SeminormFamily: null evaluator");
}

SeminormFamily SeminormFamily::of_space(const SpacePtr& space) {
    if (!space) throw std::invalid_argument("of_space: null space");
    SeminormFamily f(space->levels(),
                     [space](const Point& x, int n) { return space->seminorm(x, n); });
    f.space_backed_ = true;
    f.space_ = space;
    return f;
}

double SeminormFamily::operator()(const Point& x, int n) const {
    check_level_range(n, levels_, "seminorm");
    return eval_(x, n);
}

std::vector<double> SeminormFamily::profile(const Point& x, int kmax) const {
    check_level_range(kmax, levels_, "profile");
    if (space_backed_) return space_->seminorm_profile(x, kmax);
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
    for (int n = 0; n <= kmax; ++n) out[static_cast<std::size_t>(n)] = eval_(x, n);
    return out;
}

SeminormFamily SeminormFamily::reindexed(const std::vector<double>& c, int d) const {
    if (d < 0) throw std::invalid_argument("reindexed: d must be >= 0");
    if (d > levels_) throw std::out_of_range("reindexed: d exceeds truncation level");
    const int new_levels = levels_ - d;
    if (static_cast<int>(c.size()) < new_levels + 1)
        throw std::invalid_argument("reindexed: need a constant for each level 0..N-d");
    for (int n = 0; n <= new_levels; ++n)
        if (!(c[static_cast<std::size_t>(n)] > 0.0))
            throw std::invalid_argument("reindexed: constants must be positive");
    std::vector<double> cc(c.begin(), c.begin() + new_levels + 1);
    SeminormFamily base = *this;
    return SeminormFamily(new_levels, [base, cc, d](const Point& x, int n) {
        return cc[static_cast<std::size_t>(n)] * base(x, n + d);
    });
}

SeminormFamily reindex(const SeminormFamily& base, const std::vector<double>& c, int d) {
    return base.reindexed(c, d);
}

SeminormFamily SpaceSpec::family() const {
    SeminormFamily base = SeminormFamily::of_space(space);
    if (reindex_c.empty()) return base;
    return base.reindexed(reindex_c, reindex_d);
}

nlohmann::json SpaceSpec::to_json() const {
    nlohmann::json j = space->descriptor();
    if (!reindex_c.empty()) j["reindex"] = {{"c", reindex_c}, {"d", reindex_d}};
    return j;
}

SpaceSpec SpaceSpec::from_json(const nlohmann::json& j) {
    SpaceSpec spec;
    spec.space = Space::from_descriptor(j);
    if (j.contains("reindex")) {
        const auto& r = j.at("reindex");
        spec.reindex_c = r.at("c").get<std::vector<double>>();
        spec.reindex_d = r.value("d", 0);
    }
    return spec;
}

double rho_of_profile(const std::vector<double>& p) {
    double m = 0.0;
    double w = 1.0;
    for (double v : p) {
        m = std::max(m, w * v / (1.0 + v));
        w *= 0.5;
    }
    return m;
}

double rho_k_of_profile(const std::vector<double>& p, int k) {
    check_level_range(k, static_cast<int>(p.size()) - 1, "rho_k");
    double m = 0.0;
    double w = 1.0;
    for (int n = 0; n <= k; ++n) {
        const double v = p[static_cast<std::size_t>(n)];
        m = std::max(m, w * v / (1.0 + v));
        w *= 0.5;
    }
    return m;
}

double rho(const SeminormFamily& space, const Point& x, const Point& y) {
    require_same_space(x, y);
    return rho_of_profile(space.profile(x - y, space.levels()));
}

double rho_k(const SeminormFamily& space, const Point& x, const Point& y, int k) {
    check_level_range(k, space.levels(), "rho_k");
    require_same_space(x, y);
    return rho_of_profile(space.profile(x - y, k));
}

double graded_norm(const SeminormFamily& space, const Point& x, int k) {
    check_level_range(k, space.levels(), "graded_norm");
    const auto p = space.profile(x, k);
    return *std::max_element(p.begin(), p.end());
}

bool pi_contains(const SeminormFamily& space, const Point& x, const LevelVector& s) {
    const int top = std::min(space.levels(), s.levels());
    const auto p = space.profile(x, top);
    for (int n = 0; n <= top; ++n)
        if (p[static_cast<std::size_t>(n)] > s[n]) return false;
    return true;
}

double s_norm(const SeminormFamily& space, const Point& x, const LevelVector& s) {
    if (s.support_empty()) throw std::domain_error("s_norm: empty support");
    const int top = std::min(space.levels(), s.levels());
    const auto p = space.profile(x, top);
    double sup = 0.0;
    for (int n = 0; n <= top; ++n) {
        const double pn = p[static_cast<std::size_t>(n)];
        if (s[n] > 0.0)
            sup = std::max(sup, pn / s[n]);
        else if (pn > 0.0)
            return std::numeric_limits<double>::infinity(); // x outside X_s at this truncation
    }
    return sup;
}

Point sample_in_pi_ball(const SeminormFamily& family, const SpacePtr& space, const LevelVector& s,
                        std::mt19937_64& rng) {
    const int top = std::min(family.levels(), s.levels());
    // a zero entry forces the corresponding seminorm to vanish, which on the
    // model spaces means the zero point
    for (int n = 0; n <= top; ++n)
        if (s[n] == 0.0) return space->zero();

    Point x = random_raw_point(space, rng);
    const auto p = family.profile(x, top);
    double tmax = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= top; ++n)
        if (p[static_cast<std::size_t>(n)] > 0.0)
            tmax = std::min(tmax, s[n] / p[static_cast<std::size_t>(n)]);
    if (!std::isfinite(tmax)) return space->zero(); // drew the zero point

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double scale = tmax * u01(rng);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Point candidate = scale * x;
        if (pi_contains(family, candidate, s)) return candidate;
        scale *= 1.0 - 0x1p-48; // shave rounding overshoot
    }
    throw std::runtime_error("sample_in_pi_ball: rejection cap exceeded");
}

Point sample_in_rho_ball(const SeminormFamily& family, const Point& center, double radius,
                         std::mt19937_64& rng) {
    if (!(radius >= 0.0) || radius >= 1.0)
        throw std::invalid_argument("sample_in_rho_ball: radius must be in [0,1)");
    const SpacePtr& space = center.space();
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double target = radius * u01(rng);
    if (target == 0.0) return center;
    Point dir = random_raw_point(space, rng);
    if (dir.is_zero()) return center;
    const auto p = family.profile(dir, family.levels());
    // rho(0, lambda*dir) is continuous, strictly increasing where positive,
    // with supremum >= 2^{-n0} > radius ... bisect the scale
    auto rho_at = [&](double lambda) {
        double m = 0.0, w = 1.0;
        for (double v : p) {
            const double lv = lambda * v;
            m = std::max(m, w * lv / (1.0 + lv));
            w *= 0.5;
        }
        return m;
    };
    double lo = 0.0, hi = 1.0;
    while (rho_at(hi) < target) {
        hi *= 2.0;
        if (hi > 1e18) throw std::runtime_error("sample_in_rho_ball: radius not reachable");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (rho_at(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return center + lo * dir; // lo side: strictly inside the target radius
}

} // namespace frechet
