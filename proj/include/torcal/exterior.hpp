#pragma once

#include "torcal/scalar.hpp"

#include <cstdint>

namespace torcal {

/// Wedge monomial dtheta_{i1} ^ ... ^ dtheta_{ik} with i1 < ... < ik, stored
/// as a bitmask over the angle indices.
using WedgeMask = uint32_t;

int wedge_sign(WedgeMask a, WedgeMask b);
std::vector<uint32_t> mask_indices(WedgeMask m);
int mask_degree(WedgeMask m);

/// Graded exterior form on T^n with Scalar coefficients, stored sparsely by
/// wedge monomial. Not necessarily homogeneous.
class Form {
  public:
    Form() = default;
    explicit Form(uint32_t n_angles) : n_(n_angles) {}
    Form(uint32_t n_angles, Scalar function);  // degree-0 form

    static Form d_angle(uint32_t n_angles, uint32_t axis);  // dtheta_axis
    static Form monomial(uint32_t n_angles, WedgeMask mask, Scalar coeff);

    uint32_t n_angles() const { return n_; }
    const std::map<WedgeMask, Scalar>& terms() const { return terms_; }
    Scalar coefficient(WedgeMask mask) const;

    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous(int degree) const;
    int max_degree() const;
    long bandwidth() const;
    Form degree_component(int degree) const;

    Form operator-() const;
    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    Form operator*(const Scalar& s) const;
    Form operator*(const Coeff& c) const;

    friend bool operator==(const Form& a, const Form& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    friend Form wedge(const Form& a, const Form& b);
    Form& wedge_by(const Form& o) { return *this = wedge(*this, o); }

    Form d() const;
    Form interior(const class VectorField& v) const;
    Form lie(const class VectorField& v) const;  // Cartan: d i_v + i_v d

    /// Contravariant pullback along an affine torus self-map.
    Form pullback(const AffineMap& map) const;

    Form map_scalars(const std::function<Scalar(const Scalar&)>& f) const;

  private:
    void insert(WedgeMask m, Scalar s);
    uint32_t n_ = 0;
    std::map<WedgeMask, Scalar> terms_;
};

/// Scalar-coefficient derivation sum_i comp_i d/dtheta_i.
class VectorField {
  public:
    VectorField() = default;
    explicit VectorField(uint32_t n_angles) : n_(n_angles), comps_(n_angles, Scalar(n_angles)) {}
    explicit VectorField(std::vector<Scalar> comps);

    static VectorField coordinate(uint32_t n_angles, uint32_t axis);

    uint32_t n_angles() const { return n_; }
    const std::vector<Scalar>& components() const { return comps_; }
    const Scalar& component(uint32_t i) const { return comps_.at(i); }
    void set_component(uint32_t i, Scalar s);

    bool is_zero() const;
    long bandwidth() const;
    bool is_constant() const;

    VectorField operator-() const;
    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    VectorField operator*(const Scalar& s) const;

    friend bool operator==(const VectorField& a, const VectorField& b) {
        return a.n_ == b.n_ && a.comps_ == b.comps_;
    }

    /// Apply as a derivation to a function.
    Scalar apply(const Scalar& f) const;

    friend VectorField bracket(const VectorField& v, const VectorField& w);

  private:
    uint32_t n_ = 0;
    std::vector<Scalar> comps_;
};

}  // namespace torcal
