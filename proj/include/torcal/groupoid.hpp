#pragma once

#include "torcal/bundle.hpp"

namespace torcal {

/// Exact point of S^1 written in turn units: turns + sum q_p * p with the
/// parameters formal (irrational) turn counts. Reduced mod 1 on the rational
/// part.
struct CircleAngle {
    Rational turns;
    std::map<uint32_t, Rational> param_turns;

    static CircleAngle from_turns(Rational q);
    static CircleAngle parameter(uint32_t sym, Rational scale = Rational(1));

    CircleAngle operator+(const CircleAngle& o) const;
    friend bool operator==(const CircleAngle& a, const CircleAngle& b) {
        return a.turns == b.turns && a.param_turns == b.param_turns;
    }
    std::string str() const;
};

/// Holonomy groupoid of the Kronecker flow restricted to the transversal
/// {1} x S^1: arrows are rotations by 2 pi n alpha (discrete model); its
/// closure is the full rotation family when the slope is irrational, a
/// finite cyclic rotation group otherwise.
class KroneckerGroupoid {
  public:
    static KroneckerGroupoid irrational(const std::string& slope_param);
    static KroneckerGroupoid rational(Rational slope);

    bool is_irrational() const { return slope_sym_.has_value(); }
    uint32_t slope_symbol() const;
    const Rational& slope_rational() const;

    /// Rotation angle of the arrow at holonomy step n.
    CircleAngle arrow(long n) const;

  private:
    KroneckerGroupoid() = default;
    std::optional<uint32_t> slope_sym_;
    Rational slope_rat_;
};

/// Normalized rotation-invariant measure on the closure's source fibers with
/// the constant cut-off; each fiber has total mass one.
struct HaarData {
    Rational fiber_mass{1};
};

struct OrbitResult {
    std::vector<CircleAngle> angles;
    bool all_distinct = false;
};

/// start + 2 pi k alpha for k = 0..steps, exact; distinctness certified via
/// exact zero-tests over the parameter field.
OrbitResult return_map_orbit(const KroneckerGroupoid& g, const CircleAngle& start, long steps);

enum class ClosureKind { PairGroupoid, FiniteCyclic, Trivial };

struct ClosureDescription {
    ClosureKind kind = ClosureKind::Trivial;
    long cyclic_order = 1;   // for FiniteCyclic
    size_t closure_rank = 1; // of the Kronecker foliation on T^2
    std::string text;
};

ClosureDescription closure_description(const KroneckerGroupoid& g);

/// Is the connection invariant under a symbolic rotation of the given base
/// angle by a fresh formal parameter? Exactness replaces the quantifier over
/// all real rotations.
bool is_rotation_invariant(const Connection& c, uint32_t axis);

/// Eq-4.8-style averaging over the closure pair groupoid: the normalized
/// rotation-invariant integral of the rotated pullbacks, realized exactly as
/// the fiber mean over the transversal angle. The result is again a
/// connection, rotation invariant, and averaging is a projection.
Connection haar_average_connection(const Connection& c, const KroneckerGroupoid& g,
                                   const HaarData& haar);

}  // namespace torcal
