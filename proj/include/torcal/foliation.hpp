#pragma once

#include "torcal/linsys.hpp"
#include "torcal/matrix.hpp"

namespace torcal {

/// Involutive constant-rank distribution on T^n given by spanning vector
/// fields. Pointwise independence is certified exactly on the quarter-angle
/// grid (the spec-level constant-rank assumption covers the rest).
class Foliation {
  public:
    Foliation(std::vector<VectorField> generators, size_t declared_rank);

    uint32_t n_angles() const { return n_; }
    size_t rank() const { return generators_.size(); }
    const std::vector<VectorField>& generators() const { return generators_; }
    long bandwidth() const;

    bool all_generators_constant() const;

  private:
    uint32_t n_ = 0;
    std::vector<VectorField> generators_;
};

/// Three-valued outcome of the exact bandwidth-limited span solves: a failed
/// truncated solve only counts as a genuine "no" when the Farkas combination
/// is re-verified against an extended system, otherwise the cutoff was too
/// small to certify.
enum class SpanStatus { InSpan, NotInSpan, CutoffInsufficient };

struct SpanResult {
    SpanStatus status = SpanStatus::InSpan;
    std::vector<Scalar> coefficients;   // InSpan: target = sum coeff_i * gen_i
    std::vector<CertTerm> certificate;  // NotInSpan: verified combination
    Coeff certificate_rhs;
};

/// Solve  target = sum_i c_i * gen_i  for Scalar coefficients of bandwidth
/// <= cutoff, exactly over all Fourier modes.
SpanResult span_solve(const std::vector<VectorField>& gens, const VectorField& target, long cutoff);

struct InvolutivityResult {
    SpanStatus status = SpanStatus::InSpan;
    /// per generator pair (a<b), the span coefficients of [gen_a, gen_b]
    std::vector<std::vector<Scalar>> bracket_coefficients;
    /// NotInSpan: which bracket fails, and its verified certificate
    size_t offending_a = 0, offending_b = 0;
    VectorField offending_bracket;
    std::vector<CertTerm> certificate;
};

InvolutivityResult check_involutive(const Foliation& f, long cutoff);

/// i(Z)a = i(Z)da = 0 for every generator Z.
bool is_basic_form(const Foliation& f, const Form& a);

/// Bott derivative of the normal section represented by s along Z in F:
/// the class of [Z, s] mod F, returned as a representative.
VectorField bott_derivative(const Foliation& f, const VectorField& z, const VectorField& s,
                            long cutoff);

/// Do v and w represent the same normal section (v - w tangent to F)?
SpanStatus normal_equal(const Foliation& f, const VectorField& v, const VectorField& w, long cutoff);

/// Dimension of the leaf-closure distribution of a linear foliation
/// (constant generators over Q(i)[params]): n minus the rank of the integer
/// annihilator lattice, computed exactly over Q.
size_t closure_rank(const Foliation& f);

/// Dimensions of basic cohomology by degree (0..n) on the bandwidth-<=cutoff
/// slice of the basic complex; exact rank-nullity over the coefficient field.
std::vector<size_t> basic_cohomology_dims(const Foliation& f, long cutoff);

/// Transverse metric: symmetric Scalar matrix over a declared coframe of
/// 1-forms spanning the conormal bundle of the foliation.
class TransverseMetric {
  public:
    TransverseMetric(std::vector<Form> coframe, Matrix<Scalar> g);

    uint32_t n_angles() const { return n_; }
    const std::vector<Form>& coframe() const { return coframe_; }
    const Matrix<Scalar>& components() const { return g_; }

    /// The symmetric 2-tensor sum g_ab e^a x e^b in coordinates.
    Matrix<Scalar> coordinate_tensor() const;

  private:
    uint32_t n_ = 0;
    std::vector<Form> coframe_;
    Matrix<Scalar> g_;
};

/// L_Z g = 0 for all generators Z (exact). Throws if the coframe does not
/// annihilate the foliation.
bool check_transverse_metric(const Foliation& f, const TransverseMetric& g);

}  // namespace torcal
