#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace frechet {

using cplx = std::complex<double>;

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// A point of a model space: flat coefficient vector plus the space tag that
// fixes its interpretation.  Immutable value semantics; arithmetic is exact
// coefficient arithmetic.
class Point {
public:
    Point() = default;
    Point(SpacePtr space, std::vector<cplx> coeffs);

    const SpacePtr& space() const { return space_; }
    bool empty() const { return !space_; }
    std::span<const cplx> coeffs() const { return {coeffs_.data(), coeffs_.size()}; }
    std::vector<cplx>& raw() { return coeffs_; }
    const std::vector<cplx>& raw() const { return coeffs_; }

    bool is_zero() const;
    bool same_coeffs(const Point& other) const;

    Point& operator+=(const Point& rhs);
    Point& operator-=(const Point& rhs);
    Point& operator*=(double t);
    // in-place x += t*h, the orbit inner-loop primitive
    Point& axpy(double t, const Point& h);

    friend Point operator+(Point lhs, const Point& rhs) { return lhs += rhs; }
    friend Point operator-(Point lhs, const Point& rhs) { return lhs -= rhs; }
    friend Point operator*(double t, Point p) { return p *= t; }
    friend Point operator-(Point p) { return p *= -1.0; }

private:
    SpacePtr space_;
    std::vector<cplx> coeffs_;
};

// Model space descriptor: a truncated graded Fréchet space presented through
// N+1 seminorms.  Concrete models:
//   euclidean(dim)   - R^dim, every seminorm equal to the Euclidean norm
//   fourier(M)       - trigonometric polynomials û_j, |j| <= M, with
//                      ||u||_n = max_j (1+|j|)^n |û_j|
//   curve_c0/c1      - grid curves [-1,1] -> base with sup (resp. C^1) seminorms
//   pair             - product with max seminorms
class Space : public std::enable_shared_from_this<Space> {
public:
    enum class Model { euclidean, fourier, curve_c0, curve_c1, pair };

    static SpacePtr euclidean(int dim, int levels = 16);
    static SpacePtr fourier(int modes, int levels = 16);
    static SpacePtr curve_c0(SpacePtr base, int segments);
    static SpacePtr curve_c1(SpacePtr base, int segments);
    static SpacePtr pair(SpacePtr first, SpacePtr second);

    Model model() const { return model_; }
    int levels() const { return levels_; } // N: seminorm indices run 0..N
    int dim() const;                       // euclidean
    int modes() const;                     // fourier: M
    int segments() const;                  // curves: T (T+1 nodes)
    const SpacePtr& base() const;          // curves
    const SpacePtr& first() const;         // pair
    const SpacePtr& second() const;        // pair

    std::size_t coeff_count() const { return coeff_count_; }
    bool same(const Space& other) const;
    std::string name() const;
    // true when every seminorm level evaluates identically (euclidean leaves)
    bool level_independent() const;

    double seminorm(const Point& x, int n) const;
    // all levels 0..kmax in one traversal
    std::vector<double> seminorm_profile(const Point& x, int kmax) const;

    Point zero() const;
    Point point(std::vector<cplx> coeffs) const;
    Point point_real(const std::vector<double>& values) const;

    // fourier-only operations (throw std::invalid_argument elsewhere)
    Point fourier_mode(int j, cplx amplitude) const;
    Point derivative(const Point& u) const;               // û_j -> i j û_j
    Point antiderivative_meanzero(const Point& u) const;  // û_j -> û_j/(i j), û_0 -> 0
    // coefficient convolution truncated to |j| <= M (documented truncation)
    Point pointwise_mul(const Point& u, const Point& v) const;
    // values on the 2M+1 uniform collocation angles and exact inverse
    std::vector<cplx> fourier_values(const Point& u) const;
    Point fourier_from_values(const std::vector<cplx>& values) const;
    cplx fourier_value_at(const Point& u, double theta) const;

    // curve access (curve_c0/curve_c1 only)
    double node_time(int i) const; // -1 + 2 i / T
    Point node_value(const Point& z, int i) const;
    Point node_derivative(const Point& z, int i) const; // curve_c1 only
    Point assemble_curve(const std::vector<Point>& values,
                         const std::vector<Point>& derivatives = {}) const;

    // pair access
    Point pair_first(const Point& xy) const;
    Point pair_second(const Point& xy) const;
    Point pair_make(const Point& x, const Point& y) const;

    nlohmann::json descriptor() const;
    static SpacePtr from_descriptor(const nlohmann::json& j);

    double seminorm_span(std::span<const cplx> a, int n) const;
    void seminorm_profile_span(std::span<const cplx> a, int kmax, double* out) const;

private:
    Space() = default;

    Model model_ = Model::euclidean;
    int levels_ = 16;
    int dim_ = 0;       // euclidean
    int modes_ = 0;     // fourier
    int segments_ = 0;  // curves
    SpacePtr base_, first_, second_;
    std::size_t coeff_count_ = 0;
    std::vector<cplx> root_powers_; // fourier: w^k, w = exp(2 pi i/(2M+1))
};

void require_same_space(const Point& a, const Point& b);

} // namespace frechet
