#pragma once

#include "torcal/bundle.hpp"

namespace torcal {

/// Element of the Cartan model with polynomial coefficients: a polynomial in
/// the duals x^1..x^d of an abelian Lie algebra, with matrix-of-Forms
/// coefficients (1x1 for the scalar model). Grading: 2*(poly degree) + form
/// degree.
class EquivForm {
  public:
    EquivForm(std::vector<uint32_t> dual_syms, uint32_t n_angles, size_t matrix_dim = 1);

    static EquivForm from_form(std::vector<uint32_t> dual_syms, Form f);
    static EquivForm from_matrix(std::vector<uint32_t> dual_syms, Matrix<Form> m);
    /// x^j as an EquivForm (index into dual_syms).
    static EquivForm dual_var(std::vector<uint32_t> dual_syms, uint32_t n_angles, size_t index,
                              size_t matrix_dim = 1);

    const std::vector<uint32_t>& dual_syms() const { return duals_; }
    uint32_t n_angles() const { return n_; }
    size_t matrix_dim() const { return dim_; }
    const std::map<std::vector<long>, Matrix<Form>>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    Matrix<Form> coefficient(const std::vector<long>& exps) const;
    void set_coefficient(std::vector<long> exps, Matrix<Form> coeff);

    /// Largest total grading 2|e| + form degree present.
    int max_grading() const;
    EquivForm grading_component(int grading) const;
    EquivForm truncate_dual_degree(long max_degree) const;

    EquivForm operator-() const;
    EquivForm& operator+=(const EquivForm& o);
    EquivForm& operator-=(const EquivForm& o);
    friend EquivForm operator+(EquivForm a, const EquivForm& b) { return a += b; }
    friend EquivForm operator-(EquivForm a, const EquivForm& b) { return a -= b; }
    friend EquivForm operator*(const EquivForm& a, const EquivForm& b);
    EquivForm operator*(const Coeff& c) const;

    friend bool operator==(const EquivForm& a, const EquivForm& b) {
        return a.duals_ == b.duals_ && a.n_ == b.n_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    EquivForm d() const;
    EquivForm interior(const VectorField& v) const;
    EquivForm lie(const VectorField& v) const;

    /// Substitute the given 2-forms for the dual variables (Chern-Weil
    /// evaluation step). Matrix coefficients wedge entrywise with the even
    /// substitution forms.
    Matrix<Form> substitute_duals(const std::vector<Form>& values) const;
    /// Evaluate the dual variables at rational points.
    Matrix<Form> evaluate_duals(const std::vector<Rational>& values) const;

  private:
    void insert(std::vector<long> exps, Matrix<Form> m);
    std::vector<uint32_t> duals_;
    uint32_t n_ = 0;
    size_t dim_ = 1;
    std::map<std::vector<long>, Matrix<Form>> terms_;
};

/// d_g a = d a - sum_j x^j i(Y_j) a; raises the total grading by one.
EquivForm equivariant_d(const EquivForm& a, const std::vector<VectorField>& actions);

/// L_{Y_j} of every coefficient vanishes (abelian actions).
bool is_invariant(const EquivForm& a, const std::vector<VectorField>& actions);

/// Invariant connection together with commuting action fields, one per dual
/// variable; the data feeding moments and equivariant curvature.
class EquivariantBundleData {
  public:
    EquivariantBundleData(Connection connection,
                          std::vector<std::pair<uint32_t, VectorField>> actions);

    const Connection& connection() const { return conn_; }
    const std::vector<std::pair<uint32_t, VectorField>>& actions() const { return actions_; }
    std::vector<uint32_t> dual_syms() const;
    std::vector<VectorField> action_fields() const;

  private:
    Connection conn_;
    std::vector<std::pair<uint32_t, VectorField>> actions_;
};

/// mu(Y_j) = -omega(Y_j), a matrix of basic functions per action field.
std::vector<Matrix<Scalar>> moment(const EquivariantBundleData& data);

/// R + sum_j x^j mu_j as a matrix-valued EquivForm.
EquivForm equivariant_curvature(const EquivariantBundleData& data);

/// Defect of the equivariant Bianchi identity
///   d(R+mu) - sum_j x^j i(Y_j)(R+mu) + [omega, R+mu];
/// identically zero for valid data.
EquivForm equivariant_bianchi_defect(const EquivariantBundleData& data);

/// Tr e^{-R} for diagonal (commuting) curvature; exact and closed.
Form chern_character(const Connection& c);

/// Tr e^{-(R+mu(Y))} at a rational evaluation point of the duals; moment
/// exponentials become exact phase atoms.
Form equivariant_chern_character(const EquivariantBundleData& data,
                                 const std::vector<Rational>& eval_at);

/// Formal variant: the exponential series truncated at the given polynomial
/// degree in the dual variables.
EquivForm equivariant_chern_character_formal(const EquivariantBundleData& data, long truncation);

/// Successive (Id - theta^j ^ i(X_j)); output is annihilated by every i(X_j).
Form horizontal_projection(const Form& a, const std::vector<std::pair<Form, VectorField>>& frame);
EquivForm horizontal_projection(const EquivForm& a,
                                const std::vector<std::pair<Form, VectorField>>& frame);

/// Chern-Weil map: substitute the curvature 2-forms for the dual variables,
/// then project horizontally. A chain map taking d_g to d; the identity on
/// basic elements.
Form chern_weil(const EquivForm& a, const std::vector<std::pair<Form, VectorField>>& frame,
                const std::vector<Form>& curvatures);

}  // namespace torcal
