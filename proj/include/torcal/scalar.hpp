#pragma once

#include "torcal/coeff.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace torcal {

/// Fourier frequency vector; one integer per torus angle.
using Freq = std::vector<long>;

class AffineMap;

/// Finite Fourier sum on T^n with Coeff coefficients: the exact function ring
///   sum_k c_k exp(i k . theta).
/// Reality is not enforced; the complex exponential basis makes products pure
/// frequency addition. No floating point anywhere.
class Scalar {
  public:
    Scalar() = default;
    explicit Scalar(uint32_t n_angles) : n_(n_angles) {}
    Scalar(uint32_t n_angles, Coeff constant);
    Scalar(uint32_t n_angles, long constant) : Scalar(n_angles, Coeff(constant)) {}

    static Scalar exponential(uint32_t n_angles, Freq k, Coeff c = Coeff::one());
    static Scalar cosine(uint32_t n_angles, uint32_t axis, long freq = 1);
    static Scalar sine(uint32_t n_angles, uint32_t axis, long freq = 1);
    static Scalar parameter(uint32_t n_angles, const std::string& name);

    uint32_t n_angles() const { return n_; }
    const std::map<Freq, Coeff>& terms() const { return terms_; }
    void set_term(Freq k, Coeff c);
    Coeff term(const Freq& k) const;

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Coeff constant_term() const;

    /// Largest |k_i| over all stored frequencies.
    long bandwidth() const;
    bool depends_on_axis(uint32_t axis) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar operator*(const Coeff& c) const;

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b);

    /// d/dtheta_axis: term at k picks up a factor i*k[axis]. Exact.
    Scalar partial_derivative(uint32_t axis) const;

    /// Normalized mean over the selected angles: keeps exactly the terms whose
    /// frequency vanishes on every selected axis.
    Scalar fiber_mean(const std::set<uint32_t>& axes) const;

    /// Composition with theta -> A theta + t (see AffineMap).
    Scalar pullback(const AffineMap& map) const;

    Scalar map_coefficients(const std::function<Coeff(const Coeff&)>& f) const;

    std::string str() const;

  private:
    void insert(Freq k, Coeff c);
    void check_same(const Scalar& o) const;

    uint32_t n_ = 0;
    std::map<Freq, Coeff> terms_;
};

/// Angle expression 2*pi*(turns + sum m_p * p) + (rads + sum q_p * p) with
/// rational turns/rads and formal parameters p; the exact translation data an
/// affine torus map carries.
struct AngleExpr {
    Rational rads;                         // radians, constant part
    Rational turns;                        // full turns, constant part
    std::map<uint32_t, Rational> rad_par;  // radians per parameter
    std::map<uint32_t, Rational> turn_par; // turns per parameter

    static AngleExpr from_turns(Rational q) { return AngleExpr{Rational(0), std::move(q), {}, {}}; }
    static AngleExpr from_rads(Rational q) { return AngleExpr{std::move(q), Rational(0), {}, {}}; }
    static AngleExpr parameter_rads(uint32_t sym, Rational scale = Rational(1));
    static AngleExpr parameter_turns(uint32_t sym, Rational scale = Rational(1));

    AngleExpr& operator+=(const AngleExpr& o);
    AngleExpr operator*(const Rational& s) const;
    /// exp(i * k * this); throws on non-quarter constant turn phases.
    Coeff phase(long k) const;
    bool is_zero() const;
    /// Reduce the constant turn part mod 1 (for points on the circle).
    void normalize_turns();
    std::string str() const;
};

/// theta -> A theta + t with A an integer matrix. The only pullbacks the
/// torus examples need; keeps everything exact.
class AffineMap {
  public:
    AffineMap(std::vector<std::vector<long>> lin, std::vector<AngleExpr> translation);

    static AffineMap identity(uint32_t n);
    static AffineMap translation(uint32_t n, std::vector<AngleExpr> t);
    /// Rotation of a single angle by the given amount.
    static AffineMap rotation(uint32_t n, uint32_t axis, AngleExpr by);

    uint32_t n_angles() const { return static_cast<uint32_t>(lin_.size()); }
    const std::vector<std::vector<long>>& lin() const { return lin_; }
    const std::vector<AngleExpr>& translation() const { return trans_; }

    /// this after o  (i.e. (this . o)(x) = this(o(x))).
    AffineMap compose(const AffineMap& o) const;

  private:
    std::vector<std::vector<long>> lin_;
    std::vector<AngleExpr> trans_;
};

}  // namespace torcal
