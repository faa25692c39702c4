#include "frechet/space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace frechet {

namespace {

void check_level(const Space& s, int n) {
    if (n < 0 || n > s.levels())
        throw std::out_of_range("seminorm level " + std::to_string(n) + " out of range 0.." +
                                std::to_string(s.levels()));
}

} // namespace

Point::Point(SpacePtr space, std::vector<cplx> coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
    if (!space_) throw std::invalid_argument("Point: null space");
    if (coeffs_.size() != space_->coeff_count())
        throw std::invalid_argument("Point: coefficient count mismatch");
}

bool Point::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx(0.0, 0.0); });
}

bool Point::same_coeffs(const Point& other) const {
    return coeffs_ == other.coeffs_;
}

void require_same_space(const Point& a, const Point& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("operation on empty point");
    if (a.space().get() != b.space().get() && !a.space()->same(*b.space()))
        throw std::invalid_argument("points belong to different spaces");
}

Point& Point::operator+=(const Point& rhs) {
    require_same_space(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

Point& Point::operator-=(const Point& rhs) {
    require_same_space(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

Point& Point::operator*=(double t) {
    for (auto& c : coeffs_) c *= t;
    return *this;
}

Point& Point::axpy(double t, const Point& h) {
    require_same_space(*this, h);
    const auto& hc = h.coeffs_;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += t * hc[i];
    return *this;
}

SpacePtr Space::euclidean(int dim, int levels) {
    if (dim < 1) throw std::invalid_argument("euclidean: dim >= 1 required");
    if (levels < 0) throw std::invalid_argument("levels >= 0 required");
    auto s = std::shared_ptr<Space>(new Space());
    s->model_ = Model::euclidean;
    s->dim_ = dim;
    s->levels_ = levels;
    s->coeff_count_ = static_cast<std::size_t>(dim);
    return s;
}

SpacePtr Space::fourier(int modes, int levels) {
    if (modes < 1) throw std::invalid_argument("fourier: modes >= 1 required");
    if (levels < 0) throw std::invalid_argument("levels >= 0 required");
    auto s = std::shared_ptr<Space>(new Space());
    s->model_ = Model::fourier;
    s->modes_ = modes;
    s->levels_ = levels;
    s->coeff_count_ = static_cast<std::size_t>(2 * modes + 1);
    const int q = 2 * modes + 1;
    s->root_powers_.resize(static_cast<std::size_t>(q));
    for (int k = 0; k < q; ++k) {
        const double a = 2.0 * std::numbers::pi * k / q;
        s->root_powers_[static_cast<std::size_t>(k)] = cplx(std::cos(a), std::sin(a));
    }
    return s;
}

SpacePtr Space::curve_c0(SpacePtr base, int segments) {
    if (!base) throw std::invalid_argument("curve: null base space");
    if (segments < 2 || segments % 2 != 0)
        throw std::invalid_argument("curve: segments must be even and >= 2");
    auto s = std::shared_ptr<Space>(new Space());
    s->model_ = Model::curve_c0;
    s->segments_ = segments;
    s->levels_ = base->levels();
    s->coeff_count_ = static_cast<std::size_t>(segments + 1) * base->coeff_count();
    s->base_ = std::move(base);
    return s;
}

SpacePtr Space::curve_c1(SpacePtr base, int segments) {
    auto c0 = curve_c0(base, segments); // validates
    auto s = std::shared_ptr<Space>(new Space());
    s->model_ = Model::curve_c1;
    s->segments_ = segments;
    s->levels_ = c0->base()->levels();
    s->coeff_count_ = 2 * c0->coeff_count();
    s->base_ = c0->base();
    return s;
}

SpacePtr Space::pair(SpacePtr first, SpacePtr second) {
    if (!first || !second) throw std::invalid_argument("pair: null component space");
    if (first->levels() != second->levels())
        throw std::invalid_argument("pair: component level counts differ");
    auto s = std::shared_ptr<Space>(new Space());
    s->model_ = Model::pair;
    s->levels_ = first->levels();
    s->coeff_count_ = first->coeff_count() + second->coeff_count();
    s->first_ = std::move(first);
    s->second_ = std::move(second);
    return s;
}

int Space::dim() const {
    if (model_ != Model::euclidean) throw std::invalid_argument("dim: not a euclidean space");
    return dim_;
}

int Space::modes() const {
    if (model_ != Model::fourier) throw std::invalid_argument("modes: not a fourier space");
    return modes_;
}

int Space::segments() const {
    if (model_ != Model::curve_c0 && model_ != Model::curve_c1)
        throw std::invalid_argument("segments: not a curve space");
    return segments_;
}

const SpacePtr& Space::base() const {
    if (model_ != Model::curve_c0 && model_ != Model::curve_c1)
        throw std::invalid_argument("base: not a curve space");
    return base_;
}

const SpacePtr& Space::first() const {
    if (model_ != Model::pair) throw std::invalid_argument("first: not a pair space");
    return first_;
}

const SpacePtr& Space::second() const {
    if (model_ != Model::pair) throw std::invalid_argument("second: not a pair space");
    return second_;
}

bool Space::same(const Space& o) const {
    if (this == &o) return true;
    if (model_ != o.model_ || levels_ != o.levels_) return false;
    switch (model_) {
    case Model::euclidean: return dim_ == o.dim_;
    case Model::fourier: return modes_ == o.modes_;
    case Model::curve_c0:
    case Model::curve_c1: return segments_ == o.segments_ && base_->same(*o.base_);
    case Model::pair: return first_->same(*o.first_) && second_->same(*o.second_);
    }
    return false;
}

bool Space::level_independent() const {
    switch (model_) {
    case Model::euclidean: return true;
    case Model::fourier: return false;
    case Model::curve_c0:
    case Model::curve_c1: return base_->level_independent();
    case Model::pair: return first_->level_independent() && second_->level_independent();
    }
    return false;
}

std::string Space::name() const {
    switch (model_) {
    case Model::euclidean: return "euclidean(" + std::to_string(dim_) + ")";
    case Model::fourier: return "fourier(" + std::to_string(modes_) + ")";
    case Model::curve_c0: return "c0[" + base_->name() + ";" + std::to_string(segments_) + "]";
    case Model::curve_c1: return "c1[" + base_->name() + ";" + std::to_string(segments_) + "]";
    case Model::pair: return "pair[" + first_->name() + "," + second_->name() + "]";
    }
    return "?";
}

double Space::seminorm_span(std::span<const cplx> a, int n) const {
    switch (model_) {
    case Model::euclidean: {
        double s2 = 0.0;
        for (cplx c : a) s2 += std::norm(c);
        return std::sqrt(s2);
    }
    case Model::fourier: {
        double m = 0.0;
        for (int j = -modes_; j <= modes_; ++j) {
            const double mag = std::abs(a[static_cast<std::size_t>(j + modes_)]);
            if (mag == 0.0) continue;
            m = std::max(m, std::pow(1.0 + std::abs(j), n) * mag);
        }
        return m;
    }
    case Model::curve_c0: {
        const std::size_t bc = base_->coeff_count();
        double m = 0.0;
        for (int i = 0; i <= segments_; ++i)
            m = std::max(m, base_->seminorm_span(a.subspan(static_cast<std::size_t>(i) * bc, bc), n));
        return m;
    }
    case Model::curve_c1: {
        const std::size_t half = coeff_count_ / 2;
        const std::size_t bc = base_->coeff_count();
        double m = 0.0;
        for (int i = 0; i <= segments_; ++i) {
            const std::size_t off = static_cast<std::size_t>(i) * bc;
            m = std::max(m, base_->seminorm_span(a.subspan(off, bc), n));
            m = std::max(m, base_->seminorm_span(a.subspan(half + off, bc), n));
        }
        return m;
    }
    case Model::pair: {
        const std::size_t fc = first_->coeff_count();
        return std::max(first_->seminorm_span(a.subspan(0, fc), n),
                        second_->seminorm_span(a.subspan(fc), n));
    }
    }
    return 0.0;
}

void Space::seminorm_profile_span(std::span<const cplx> a, int kmax, double* out) const {
    switch (model_) {
    case Model::euclidean: {
        double s2 = 0.0;
        for (cplx c : a) s2 += std::norm(c);
        const double v = std::sqrt(s2);
        for (int n = 0; n <= kmax; ++n) out[n] = v;
        return;
    }
    case Model::fourier: {
        for (int n = 0; n <= kmax; ++n) out[n] = 0.0;
        for (int j = -modes_; j <= modes_; ++j) {
            const double mag = std::abs(a[static_cast<std::size_t>(j + modes_)]);
            if (mag == 0.0) continue;
            const double w = 1.0 + std::abs(j);
            double t = mag;
            for (int n = 0; n <= kmax; ++n) {
                if (t > out[n]) out[n] = t;
                t *= w;
            }
        }
        return;
    }
    case Model::curve_c0:
    case Model::curve_c1:
    case Model::pair: {
        std::vector<double> tmp(static_cast<std::size_t>(kmax) + 1);
        auto merge_block = [&](const Space& sub, std::span<const cplx> block) {
            sub.seminorm_profile_span(block, kmax, tmp.data());
            for (int n = 0; n <= kmax; ++n) out[n] = std::max(out[n], tmp[n]);
        };
        for (int n = 0; n <= kmax; ++n) out[n] = 0.0;
        if (model_ == Model::pair) {
            const std::size_t fc = first_->coeff_count();
            merge_block(*first_, a.subspan(0, fc));
            merge_block(*second_, a.subspan(fc));
        } else {
            const std::size_t bc = base_->coeff_count();
            const int blocks = (model_ == Model::curve_c1) ? 2 * (segments_ + 1) : segments_ + 1;
            for (int i = 0; i < blocks; ++i)
                merge_block(*base_, a.subspan(static_cast<std::size_t>(i) * bc, bc));
        }
        return;
    }
    }
}

double Space::seminorm(const Point& x, int n) const {
    check_level(*this, n);
    if (x.empty() || !x.space()->same(*this))
        throw std::invalid_argument("seminorm: point not in this space");
    return seminorm_span(x.coeffs(), n);
}

std::vector<double> Space::seminorm_profile(const Point& x, int kmax) const {
    check_level(*this, kmax);
    if (x.empty() || !x.space()->same(*this))
        throw std::invalid_argument("seminorm_profile: point not in this space");
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
    seminorm_profile_span(x.coeffs(), kmax, out.data());
    return out;
}

Point Space::zero() const {
    return Point(shared_from_this(), std::vector<cplx>(coeff_count_, cplx(0.0, 0.0)));
}

Point Space::point(std::vector<cplx> coeffs) const {
    return Point(shared_from_this(), std::move(coeffs));
}

Point Space::point_real(const std::vector<double>& values) const {
    if (values.size() != coeff_count_) throw std::invalid_argument("point_real: size mismatch");
    std::vector<cplx> c(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) c[i] = cplx(values[i], 0.0);
    return point(std::move(c));
}

Point Space::fourier_mode(int j, cplx amplitude) const {
    if (model_ != Model::fourier) throw std::invalid_argument("fourier_mode: not a fourier space");
    if (std::abs(j) > modes_) throw std::out_of_range("fourier_mode: |j| > modes");
    std::vector<cplx> c(coeff_count_, cplx(0.0, 0.0));
    c[static_cast<std::size_t>(j + modes_)] = amplitude;
    return point(std::move(c));
}

Point Space::derivative(const Point& u) const {
    if (model_ != Model::fourier) throw std::invalid_argument("derivative: not a fourier space");
    std::vector<cplx> c(u.raw());
    for (int j = -modes_; j <= modes_; ++j)
        c[static_cast<std::size_t>(j + modes_)] *= cplx(0.0, static_cast<double>(j));
    return point(std::move(c));
}

Point Space::antiderivative_meanzero(const Point& u) const {
    if (model_ != Model::fourier)
        throw std::invalid_argument("antiderivative_meanzero: not a fourier space");
    std::vector<cplx> c(u.raw());
    c[static_cast<std::size_t>(modes_)] = cplx(0.0, 0.0);
    for (int j = -modes_; j <= modes_; ++j) {
        if (j == 0) continue;
        c[static_cast<std::size_t>(j + modes_)] /= cplx(0.0, static_cast<double>(j));
    }
    return point(std::move(c));
}

Point Space::pointwise_mul(const Point& u, const Point& v) const {
    if (model_ != Model::fourier) throw std::invalid_argument("pointwise_mul: not a fourier space");
    require_same_space(u, v);
    const auto& a = u.raw();
    const auto& b = v.raw();
    std::vector<cplx> c(coeff_count_, cplx(0.0, 0.0));
    // c_j = sum_{l+m=j} a_l b_m; modes beyond |j| <= M are discarded
    for (int l = -modes_; l <= modes_; ++l) {
        const cplx al = a[static_cast<std::size_t>(l + modes_)];
        if (al == cplx(0.0, 0.0)) continue;
        const int mlo = std::max(-modes_, -modes_ - l);
        const int mhi = std::min(modes_, modes_ - l);
        for (int m = mlo; m <= mhi; ++m)
            c[static_cast<std::size_t>(l + m + modes_)] += al * b[static_cast<std::size_t>(m + modes_)];
    }
    return point(std::move(c));
}

std::vector<cplx> Space::fourier_values(const Point& u) const {
    if (model_ != Model::fourier) throw std::invalid_argument("fourier_values: not a fourier space");
    const int q = 2 * modes_ + 1;
    const auto& a = u.raw();
    std::vector<cplx> vals(static_cast<std::size_t>(q), cplx(0.0, 0.0));
    for (int g = 0; g < q; ++g) {
        cplx acc(0.0, 0.0);
        for (int j = -modes_; j <= modes_; ++j) {
            int e = (j * g) % q;
            if (e < 0) e += q;
            acc += a[static_cast<std::size_t>(j + modes_)] * root_powers_[static_cast<std::size_t>(e)];
        }
        vals[static_cast<std::size_t>(g)] = acc;
    }
    return vals;
}

Point Space::fourier_from_values(const std::vector<cplx>& values) const {
    if (model_ != Model::fourier)
        throw std::invalid_argument("fourier_from_values: not a fourier space");
    const int q = 2 * modes_ + 1;
    if (static_cast<int>(values.size()) != q)
        throw std::invalid_argument("fourier_from_values: need 2M+1 values");
    std::vector<cplx> a(coeff_count_, cplx(0.0, 0.0));
    for (int j = -modes_; j <= modes_; ++j) {
        cplx acc(0.0, 0.0);
        for (int g = 0; g < q; ++g) {
            int e = (-j * g) % q;
            if (e < 0) e += q;
            acc += values[static_cast<std::size_t>(g)] * root_powers_[static_cast<std::size_t>(e)];
        }
        a[static_cast<std::size_t>(j + modes_)] = acc / static_cast<double>(q);
    }
    return point(std::move(a));
}

cplx Space::fourier_value_at(const Point& u, double theta) const {
    if (model_ != Model::fourier)
        throw std::invalid_argument("fourier_value_at: not a fourier space");
    cplx acc(0.0, 0.0);
    for (int j = -modes_; j <= modes_; ++j)
        acc += u.raw()[static_cast<std::size_t>(j + modes_)] *
               cplx(std::cos(j * theta), std::sin(j * theta));
    return acc;
}

double Space::node_time(int i) const {
    const int T = segments();
    if (i < 0 || i > T) throw std::out_of_range("node_time: node index out of range");
    return -1.0 + 2.0 * i / T;
}

Point Space::node_value(const Point& z, int i) const {
    const int T = segments();
    if (i < 0 || i > T) throw std::out_of_range("node_value: node index out of range");
    if (z.empty() || !z.space()->same(*this))
        throw std::invalid_argument("node_value: point not in this space");
    const std::size_t bc = base_->coeff_count();
    const auto s = z.coeffs().subspan(static_cast<std::size_t>(i) * bc, bc);
    return base_->point(std::vector<cplx>(s.begin(), s.end()));
}

Point Space::node_derivative(const Point& z, int i) const {
    if (model_ != Model::curve_c1) throw std::invalid_argument("node_derivative: not a C1 curve");
    const int T = segments_;
    if (i < 0 || i > T) throw std::out_of_range("node_derivative: node index out of range");
    if (z.empty() || !z.space()->same(*this))
        throw std::invalid_argument("node_derivative: point not in this space");
    const std::size_t bc = base_->coeff_count();
    const std::size_t half = coeff_count_ / 2;
    const auto s = z.coeffs().subspan(half + static_cast<std::size_t>(i) * bc, bc);
    return base_->point(std::vector<cplx>(s.begin(), s.end()));
}

Point Space::assemble_curve(const std::vector<Point>& values,
                            const std::vector<Point>& derivatives) const {
    if (model_ != Model::curve_c0 && model_ != Model::curve_c1)
        throw std::invalid_argument("assemble_curve: not a curve space");
    const int T = segments_;
    if (static_cast<int>(values.size()) != T + 1)
        throw std::invalid_argument("assemble_curve: need T+1 node values");
    const bool c1 = (model_ == Model::curve_c1);
    if (c1 && static_cast<int>(derivatives.size()) != T + 1)
        throw std::invalid_argument("assemble_curve: need T+1 node derivatives");
    if (!c1 && !derivatives.empty())
        throw std::invalid_argument("assemble_curve: C0 curve takes no derivatives");
    std::vector<cplx> c;
    c.reserve(coeff_count_);
    auto append = [&](const Point& p) {
        if (p.empty() || !p.space()->same(*base_))
            throw std::invalid_argument("assemble_curve: node not in base space");
        c.insert(c.end(), p.raw().begin(), p.raw().end());
    };
    for (const auto& v : values) append(v);
    if (c1)
        for (const auto& d : derivatives) append(d);
    return point(std::move(c));
}

Point Space::pair_first(const Point& xy) const {
    if (model_ != Model::pair) throw std::invalid_argument("pair_first: not a pair space");
    if (xy.empty() || !xy.space()->same(*this))
        throw std::invalid_argument("pair_first: point not in this space");
    const auto s = xy.coeffs().subspan(0, first_->coeff_count());
    return first_->point(std::vector<cplx>(s.begin(), s.end()));
}

Point Space::pair_second(const Point& xy) const {
    if (model_ != Model::pair) throw std::invalid_argument("pair_second: not a pair space");
    if (xy.empty() || !xy.space()->same(*this))
        throw std::invalid_argument("pair_second: point not in this space");
    const auto s = xy.coeffs().subspan(first_->coeff_count());
    return second_->point(std::vector<cplx>(s.begin(), s.end()));
}

Point Space::pair_make(const Point& x, const Point& y) const {
    if (model_ != Model::pair) throw std::invalid_argument("pair_make: not a pair space");
    if (x.empty() || !x.space()->same(*first_) || y.empty() || !y.space()->same(*second_))
        throw std::invalid_argument("pair_make: component space mismatch");
    std::vector<cplx> c;
    c.reserve(coeff_count_);
    c.insert(c.end(), x.raw().begin(), x.raw().end());
    c.insert(c.end(), y.raw().begin(), y.raw().end());
    return point(std::move(c));
}

nlohmann::json Space::descriptor() const {
    nlohmann::json j;
    switch (model_) {
    case Model::euclidean:
        j["model"] = "euclidean";
        j["dim"] = dim_;
        break;
    case Model::fourier:
        j["model"] = "fourier";
        j["modes"] = modes_;
        break;
    case Model::curve_c0:
    case Model::curve_c1:
        j["model"] = (model_ == Model::curve_c0) ? "curve_c0" : "curve_c1";
        j["segments"] = segments_;
        j["base"] = base_->descriptor();
        break;
    case Model::pair:
        j["model"] = "pair";
        j["first"] = first_->descriptor();
        j["second"] = second_->descriptor();
        break;
    }
    j["levels"] = levels_;
    return j;
}

SpacePtr Space::from_descriptor(const nlohmann::json& j) {
    const std::string model = j.at("model").get<std::string>();
    const int levels = j.value("levels", 16);
    if (model == "euclidean") return euclidean(j.at("dim").get<int>(), levels);
    if (model == "fourier") return fourier(j.at("modes").get<int>(), levels);
    if (model == "curve_c0") return curve_c0(from_descriptor(j.at("base")), j.at("segments").get<int>());
    if (model == "curve_c1") return curve_c1(from_descriptor(j.at("base")), j.at("segments").get<int>());
    if (model == "pair") return pair(from_descriptor(j.at("first")), from_descriptor(j.at("second")));
    throw std::invalid_argument("unknown space model: " + model);
}

} // namespace frechet
