#pragma once

// Deterministic random generators for property tests. Coefficients stay
// small so products remain readable and fast; no floating point anywhere.

#include "torcal/exterior.hpp"
#include "torcal/scalar.hpp"

#include <random>

namespace torcal {

class TestRng {
  public:
    explicit TestRng(uint64_t seed) : eng_(seed) {}

    long integer(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(eng_);
    }

    Rational rational() {
        long num = integer(-4, 4);
        long den = integer(1, 3);
        return Rational(num, den);
    }

    ComplexRational complex_rational() { return {rational(), rational()}; }

    /// Coefficient, occasionally involving the parameter "alpha".
    Coeff coeff(bool with_params = true) {
        Coeff c(complex_rational());
        if (with_params && integer(0, 3) == 0)
            c += Coeff::parameter("alpha") * Coeff(complex_rational());
        return c;
    }

    Scalar scalar(uint32_t n, long bandwidth, int terms = 3, bool with_params = true) {
        Scalar s(n);
        for (int t = 0; t < terms; ++t) {
            Freq k(n);
            for (uint32_t i = 0; i < n; ++i) k[i] = integer(-bandwidth, bandwidth);
            s += Scalar::exponential(n, std::move(k), coeff(with_params));
        }
        return s;
    }

    Form form(uint32_t n, int degree, long bandwidth = 1, int terms = 2) {
        Form f(n);
        for (int t = 0; t < terms; ++t) {
            WedgeMask m = 0;
            while (mask_degree(m) < degree) m |= WedgeMask(1) << integer(0, n - 1);
            f += Form::monomial(n, m, scalar(n, bandwidth, 2));
        }
        return f;
    }

    /// Inhomogeneous form with degrees spread over 0..n.
    Form mixed_form(uint32_t n, long bandwidth = 1) {
        Form f(n);
        for (int d = 0; d <= static_cast<int>(n); ++d)
            if (integer(0, 1)) f += form(n, d, bandwidth, 1);
        return f;
    }

    VectorField vector_field(uint32_t n, long bandwidth = 1) {
        VectorField v(n);
        for (uint32_t i = 0; i < n; ++i) v.set_component(i, scalar(n, bandwidth, 2));
        return v;
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace torcal
