#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace torcal {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Integer floor_div(const Integer& num, const Integer& den) {
    Integer q = num / den;
    if ((num % den) != 0 && ((num < 0) != (den < 0))) --q;
    return q;
}

/// Largest integer <= r.
inline Integer rational_floor(const Rational& r) {
    return floor_div(Integer(numerator(r)), Integer(denominator(r)));
}

inline long to_long(const Rational& r) {
    if (!is_integer(r)) throw std::invalid_argument("expected an integer, got " + r.str());
    return static_cast<long>(numerator(r));
}

/// Gaussian rational a + b*i, the ground field of every coefficient.
class ComplexRational {
  public:
    ComplexRational() = default;
    ComplexRational(long v) : re_(v) {}
    ComplexRational(Rational re) : re_(std::move(re)) {}
    ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static ComplexRational i() { return ComplexRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    ComplexRational operator-() const { return {-re_, -im_}; }

    ComplexRational& operator+=(const ComplexRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ComplexRational& operator-=(const ComplexRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ComplexRational& operator*=(const ComplexRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    ComplexRational& operator/=(const ComplexRational& o) {
        Rational n = o.re_ * o.re_ + o.im_ * o.im_;
        if (n == 0) throw std::domain_error("division by zero");
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational m = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }

    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }
    friend bool operator<(const ComplexRational& a, const ComplexRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    /// i^k for integer k, used when folding quarter-turn phases.
    static ComplexRational unit_power(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return ComplexRational(1);
            case 1: return i();
            case 2: return ComplexRational(-1);
            default: return -i();
        }
    }

    /// Canonical text: "p/q", "r/s*i" or "p/q+r/s*i" (denominator 1 omitted).
    std::string str() const;

  private:
    Rational re_{0};
    Rational im_{0};
};

std::string rational_str(const Rational& r);

}  // namespace torcal
