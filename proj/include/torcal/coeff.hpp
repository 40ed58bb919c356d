#pragma once

#include "torcal/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torcal {

/// Process-wide intern table for formal parameter names. Ids are assigned in
/// declaration order, so canonical output is deterministic for a given input.
class SymbolTable {
  public:
    static SymbolTable& instance();

    uint32_t intern(const std::string& name);
    const std::string& name(uint32_t id) const;
    std::optional<uint32_t> lookup(const std::string& name) const;

  private:
    SymbolTable();
    std::vector<std::string> names_;
    std::map<std::string, uint32_t> ids_;
};

uint32_t intern_symbol(const std::string& name);
const std::string& symbol_name(uint32_t id);

/// One factor of a monomial.
///
/// Power      p^e          (e a nonnegative integer; plain transcendental)
/// PhaseRad   exp(i*q*p)   (q rational; p a formal angle, or 1 when sym == 0)
/// PhaseTurn  exp(2*pi*i*q*p)
///
/// Phase factors are units, so their exponents may be any rational. The three
/// families are multiplicatively independent for transcendental parameters,
/// which is exactly the algebraic content the torus arguments need (k*alpha
/// never lands in Z for k != 0).
enum class AtomKind : uint8_t { Power = 0, PhaseRad = 1, PhaseTurn = 2 };

struct Atom {
    uint32_t sym = 0;
    AtomKind kind = AtomKind::Power;
    Rational exp;

    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.sym != b.sym) return a.sym < b.sym;
        return a.kind < b.kind;
    }
    friend bool operator==(const Atom& a, const Atom& b) {
        return a.sym == b.sym && a.kind == b.kind && a.exp == b.exp;
    }
};

/// Sorted by (sym, kind); no zero exponents stored.
using Monomial = std::vector<Atom>;

bool monomial_less(const Monomial& a, const Monomial& b);

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return monomial_less(a, b); }
};

/// Element of the exact coefficient ring
///   Q(i)[params][phase units],
/// i.e. a finite sum of Gaussian-rational multiples of monomials. The ring is
/// an integral domain; zero-testing is canonical-form emptiness. Values are
/// immutable in spirit: all operations return fresh objects.
class Coeff {
  public:
    Coeff() = default;
    Coeff(long v);
    Coeff(ComplexRational c);
    Coeff(Rational r) : Coeff(ComplexRational(std::move(r))) {}

    static Coeff zero() { return Coeff(); }
    static Coeff one() { return Coeff(1); }
    static Coeff i() { return Coeff(ComplexRational::i()); }
    static Coeff parameter(uint32_t sym);
    static Coeff parameter(const std::string& name) { return parameter(intern_symbol(name)); }
    /// exp(i*q) for sym==0, exp(i*q*sym) otherwise.
    static Coeff phase_rad(uint32_t sym, const Rational& q);
    /// exp(2*pi*i*q*sym); for sym==0 the turn count must land on a quarter.
    static Coeff phase_turn(uint32_t sym, const Rational& q);
    static Coeff term(Monomial m, ComplexRational c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant value; throws unless is_constant().
    ComplexRational constant_value() const;
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second.is_one();
    }

    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, ComplexRational, MonomialLess>& terms() const { return terms_; }

    Coeff operator-() const;
    Coeff& operator+=(const Coeff& o);
    Coeff& operator-=(const Coeff& o);
    friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
    friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
    friend Coeff operator*(const Coeff& a, const Coeff& b);
    Coeff& operator*=(const Coeff& o) { return *this = *this * o; }

    friend bool operator==(const Coeff& a, const Coeff& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }
    friend bool operator<(const Coeff& a, const Coeff& b);

    /// Exact quotient *this / d. Returns nullopt when d does not divide
    /// exactly (phase units always divide; Power exponents must not go
    /// negative).
    std::optional<Coeff> exact_div(const Coeff& d) const;

    /// Largest monomial in the division order, with its coefficient.
    std::pair<Monomial, ComplexRational> leading() const;

    bool depends_on(uint32_t sym) const;
    long degree_in_power(uint32_t sym) const;

    /// Integrate a pure Power variable over [0,1] and eliminate it:
    /// t^m -> 1/(m+1). Throws if sym occurs in a phase factor.
    Coeff integrate_unit_interval(uint32_t sym) const;

    /// exp(*this) when every term is i*(rational) or i*(rational)*param.
    /// Produces phase units; throws otherwise.
    Coeff exponential() const;

    /// Substitute a Power parameter by a rational value.
    Coeff substitute(uint32_t sym, const Rational& value) const;

    std::string str() const;

  private:
    void insert(Monomial m, ComplexRational c);
    std::map<Monomial, ComplexRational, MonomialLess> terms_;
};

}  // namespace torcal
