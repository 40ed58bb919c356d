#pragma once

#include "torcal/exterior.hpp"

#include <set>

namespace torcal {

/// Fraction of two Coeffs, normalized opportunistically (monomial content,
/// exact division, univariate gcd). Used during elimination; everything user
/// facing is converted back to Coeff when exact.
class CoeffFrac {
  public:
    CoeffFrac() : num_(), den_(Coeff::one()) {}
    CoeffFrac(Coeff c) : num_(std::move(c)), den_(Coeff::one()) {}
    CoeffFrac(Coeff num, Coeff den);

    const Coeff& num() const { return num_; }
    const Coeff& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_.is_one(); }

    CoeffFrac operator-() const;
    friend CoeffFrac operator+(const CoeffFrac& a, const CoeffFrac& b);
    friend CoeffFrac operator-(const CoeffFrac& a, const CoeffFrac& b);
    friend CoeffFrac operator*(const CoeffFrac& a, const CoeffFrac& b);
    friend CoeffFrac operator/(const CoeffFrac& a, const CoeffFrac& b);
    friend bool operator==(const CoeffFrac& a, const CoeffFrac& b) {
        return (a - b).is_zero();
    }

    /// The exact Coeff value; throws if the fraction did not reduce.
    Coeff as_coeff() const;

    std::string str() const;

  private:
    void reduce();
    Coeff num_, den_;
};

/// Pool of solver unknowns; each unknown is a reserved Power symbol.
class UnknownPool {
  public:
    Coeff fresh(const std::string& hint = "");
    bool contains(uint32_t sym) const { return syms_.count(sym) != 0; }
    const std::vector<uint32_t>& ids() const { return order_; }
    size_t size() const { return order_.size(); }

  private:
    std::set<uint32_t> syms_;
    std::vector<uint32_t> order_;
};

/// Identifies one scalar equation: constraint family name plus Fourier mode.
struct RowKey {
    std::string family;
    Freq mode;

    friend bool operator<(const RowKey& a, const RowKey& b) {
        if (a.family != b.family) return a.family < b.family;
        return a.mode < b.mode;
    }
    friend bool operator==(const RowKey& a, const RowKey& b) {
        return a.family == b.family && a.mode == b.mode;
    }
    std::string str() const;
};

struct CertTerm {
    RowKey row;
    CoeffFrac mult;
};

enum class SolveStatus { Feasible, Infeasible };

struct SolveResult {
    SolveStatus status = SolveStatus::Feasible;
    /// unknown symbol -> exact value (absent means 0); feasible case
    std::map<uint32_t, Coeff> solution;
    /// infeasible case: sum mult * row == 0 on every column, != 0 on the rhs
    std::vector<CertTerm> certificate;
    Coeff certificate_rhs;  // value of the inconsistent combination
};

/// Sparse exact linear system over the coefficient ring. Equations are
/// assembled symbolically: build Scalars/Forms containing unknown atoms with
/// ordinary arithmetic, then add them here; each Fourier mode of each scalar
/// expression becomes one row "expr mode = 0". Solving splits the system into
/// connected components first (the torus systems are block diagonal by
/// frequency up to the generators' bandwidth).
class LinearSystem {
  public:
    explicit LinearSystem(const UnknownPool& pool) : pool_(&pool) {}

    /// Drop equations at modes with |m|_inf beyond the limit. Used when
    /// hunting certificates: with unknowns at bandwidth limit + data
    /// bandwidth, every kept equation sees its full column set, so a Farkas
    /// combination of kept rows is valid for unknowns of arbitrary bandwidth.
    void limit_equation_modes(long limit) { mode_limit_ = limit; }

    void add_scalar_equation(const std::string& family, const Scalar& expr);
    /// One scalar equation per wedge monomial, family suffixed with [i1i2..].
    void add_form_equation(const std::string& family, const Form& expr);

    size_t row_count() const { return rows_.size(); }
    size_t column_count() const;

    SolveResult solve() const;
    size_t rank() const;

    /// Does the given combination of rows vanish on every column of *this*
    /// system? (Used to re-verify certificates on an extended system.)
    bool combination_vanishes(const std::vector<CertTerm>& cert) const;
    /// Value of the combination applied to the right-hand sides.
    CoeffFrac combination_rhs(const std::vector<CertTerm>& cert) const;

  private:
    struct Row {
        std::map<uint32_t, Coeff> cols;
        Coeff rhs;
    };

    const UnknownPool* pool_;
    std::map<RowKey, Row> rows_;
    long mode_limit_ = -1;
};

/// Rank of a dense matrix over Q (exact).
size_t rational_rank(std::vector<std::vector<Rational>> m);

/// General Scalar with a fresh unknown coefficient for every mode with
/// |k|_inf <= cutoff.
Scalar unknown_scalar(UnknownPool& pool, uint32_t n_angles, long cutoff);

/// Substitute a solve() solution into a template built from unknown_scalar;
/// free unknowns read as zero.
Scalar substitute_solution(const Scalar& tmpl, const std::map<uint32_t, Coeff>& solution,
                           const UnknownPool& pool);

}  // namespace torcal
