#pragma once

#include "torcal/foliation.hpp"

#include <optional>

namespace torcal {

/// Trivial principal bundle T^base x T^fiber with abelian structure torus;
/// the fiber angles are the last `fiber_angles` coordinates of the total
/// torus. matrix_rank > 1 switches to u(1)^N-style diagonal matrix forms
/// pulled back to the same total torus (single fiber direction).
struct Bundle {
    uint32_t base_angles = 0;
    uint32_t fiber_angles = 1;
    size_t matrix_rank = 0;  // 0: one component per fiber direction

    uint32_t n_total() const { return base_angles + fiber_angles; }
    size_t rank() const { return matrix_rank == 0 ? fiber_angles : matrix_rank; }
    uint32_t fiber_axis(uint32_t j) const { return base_angles + j; }

    /// Value of i(d/dw_j) on a connection: basis matrix E_j in the torus
    /// case, the identity in the matrix-rank case.
    Matrix<Scalar> vertical_target(uint32_t j) const;

    friend bool operator==(const Bundle& a, const Bundle& b) {
        return a.base_angles == b.base_angles && a.fiber_angles == b.fiber_angles &&
               a.matrix_rank == b.matrix_rank;
    }
};

Matrix<Form> matrix_d(const Matrix<Form>& m);
Matrix<Form> matrix_wedge(const Matrix<Form>& a, const Matrix<Form>& b);
Matrix<Form> matrix_interior(const Matrix<Form>& m, const VectorField& v);
Matrix<Form> matrix_lie(const Matrix<Form>& m, const VectorField& v);
bool matrix_is_zero(const Matrix<Form>& m);

/// exp(x) of a form with no degree-0 part: the series truncates past the
/// torus dimension, so the result is exact.
Form form_exponential_nilpotent(const Form& x);

/// Connection-style matrix of 1-forms on the total torus of a bundle.
class Connection {
  public:
    Connection(Bundle bundle, Matrix<Form> omega);
    /// Convenience for the common 1x1 case.
    Connection(Bundle bundle, Form omega);

    const Bundle& bundle() const { return bundle_; }
    const Matrix<Form>& omega() const { return omega_; }
    uint32_t n_angles() const { return bundle_.n_total(); }
    bool diagonal() const;

    friend bool operator==(const Connection& a, const Connection& b) {
        return a.bundle_ == b.bundle_ && a.omega_ == b.omega_;
    }

  private:
    Bundle bundle_;
    Matrix<Form> omega_;
};

/// Vertical normalization i(d/dw)omega = generator and fiber-translation
/// invariance L_{d/dw}omega = 0, both exact.
bool check_connection(const Connection& c);

enum class BasicClass { Basic, Adapted, Neither };

/// adapted: i(Z)omega = 0 for all generators; basic: additionally i(Z)domega = 0.
BasicClass check_basic_connection(const Connection& c, const Foliation& fp);

/// Omega = d omega + omega ^ omega (the 1-form wedge doubling absorbs the
/// 1/2 [omega,omega]).
Matrix<Form> curvature(const Connection& c);

enum class FeasStatus { Feasible, Infeasible, CutoffInsufficient };

struct BasicConnectionResult {
    FeasStatus status = FeasStatus::Feasible;
    std::optional<Connection> connection;   // feasible
    std::vector<CertTerm> certificate;      // infeasible, re-verified
    Coeff certificate_rhs;
    std::string detail;
};

/// Exact linear feasibility for a basic connection: unknown bandwidth-limited
/// 1-forms subject to the connection axioms and i(Z)omega = i(Z)domega = 0.
/// Infeasible answers carry a Farkas combination re-verified on an extended
/// system, which rules out solutions of every bandwidth (hence smooth ones).
BasicConnectionResult basic_connection_solve(const Bundle& bundle, const Foliation& fp, long cutoff);

/// Verify a certificate from basic_connection_solve against a fresh system of
/// the given unknown bandwidth.
bool verify_basic_connection_certificate(const Bundle& bundle, const Foliation& fp, long cutoff,
                                         const std::vector<CertTerm>& certificate);

/// g = pi* g_base + <omega(-), omega(-)>: transverse metric on the total
/// torus from a basic connection and an invariant base metric (the coframe
/// grows by the connection components).
TransverseMetric metric_from_connection(const Connection& c, const Foliation& fp,
                                        const TransverseMetric& g_base);

/// omega_bar = omega - sum_k theta^k (x) i(Y_k)omega for a dual frame
/// theta^k(Y_j) = delta; kills the i(Y_k) contractions exactly.
Connection reduce_connection(const Connection& c,
                             const std::vector<std::pair<Form, VectorField>>& frame);

/// Basic form T with dT = Ch(c1) - Ch(c0): closed-form t-integration of
/// Tr(-(omega1-omega0) e^{-R_t}) along the straight-line family.
Form transgression_form(const Connection& c0, const Connection& c1, const Foliation& f);

}  // namespace torcal
