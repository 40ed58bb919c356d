#include "torcal/groupoid.hpp"

#include <sstream>

namespace torcal {

CircleAngle CircleAngle::from_turns(Rational q) {
    CircleAngle a;
    a.turns = std::move(q);
    a.turns -= Rational(rational_floor(a.turns));
    return a;
}

CircleAngle CircleAngle::parameter(uint32_t sym, Rational scale) {
    CircleAngle a;
    if (scale != 0) a.param_turns[sym] = std::move(scale);
    return a;
}

CircleAngle CircleAngle::operator+(const CircleAngle& o) const {
    CircleAngle a;
    a.turns = turns + o.turns;
    a.turns -= Rational(rational_floor(a.turns));
    a.param_turns = param_turns;
    for (const auto& [sym, q] : o.param_turns) {
        a.param_turns[sym] += q;
        if (a.param_turns[sym] == 0) a.param_turns.erase(sym);
    }
    return a;
}

std::string CircleAngle::str() const {
    if (turns == 0 && param_turns.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const std::string& s) {
        if (!first) os << " + ";
        os << s;
        first = false;
    };
    if (turns != 0) emit("2*pi*" + rational_str(turns));
    for (const auto& [sym, q] : param_turns)
        emit("2*pi*" + (q == 1 ? "" : rational_str(q) + "*") + symbol_name(sym));
    return os.str();
}

KroneckerGroupoid KroneckerGroupoid::irrational(const std::string& slope_param) {
    KroneckerGroupoid g;
    g.slope_sym_ = intern_symbol(slope_param);
    return g;
}

KroneckerGroupoid KroneckerGroupoid::rational(Rational slope) {
    KroneckerGroupoid g;
    g.slope_rat_ = std::move(slope);
    return g;
}

uint32_t KroneckerGroupoid::slope_symbol() const {
    if (!slope_sym_) throw std::logic_error("rational-slope groupoid has no slope symbol");
    return *slope_sym_;
}

const Rational& KroneckerGroupoid::slope_rational() const {
    if (slope_sym_) throw std::logic_error("irrational-slope groupoid has no rational slope");
    return slope_rat_;
}

CircleAngle KroneckerGroupoid::arrow(long n) const {
    if (slope_sym_) return CircleAngle::parameter(*slope_sym_, Rational(n));
    return CircleAngle::from_turns(slope_rat_ * n);
}

OrbitResult return_map_orbit(const KroneckerGroupoid& g, const CircleAngle& start, long steps) {
    if (steps < 0) throw std::invalid_argument("steps must be nonnegative");
    OrbitResult out;
    for (long k = 0; k <= steps; ++k) out.angles.push_back(start + g.arrow(k));
    out.all_distinct = true;
    for (size_t i = 0; i < out.angles.size() && out.all_distinct; ++i)
        for (size_t j = i + 1; j < out.angles.size(); ++j)
            if (out.angles[i] == out.angles[j]) {
                out.all_distinct = false;
                break;
            }
    return out;
}

ClosureDescription closure_description(const KroneckerGroupoid& g) {
    ClosureDescription out;
    // leaf-closure rank of the Kronecker foliation span{dx + slope dy} on T^2
    VectorField v(2);
    v.set_component(0, Scalar(2, 1));
    if (g.is_irrational())
        v.set_component(1, Scalar(2, Coeff::parameter(g.slope_symbol())));
    else
        v.set_component(1, Scalar(2, Coeff(ComplexRational(g.slope_rational()))));
    out.closure_rank = closure_rank(Foliation({v}, 1));

    std::ostringstream os;
    if (g.is_irrational()) {
        out.kind = ClosureKind::PairGroupoid;
        os << "pair groupoid of the transversal (dense orbits), closure rank " << out.closure_rank;
    } else {
        Rational s = g.slope_rational();
        s -= Rational(rational_floor(s));
        if (s == 0) {
            out.kind = ClosureKind::Trivial;
            out.cyclic_order = 1;
            os << "trivial groupoid (unit arrows only), closure rank " << out.closure_rank;
        } else {
            out.kind = ClosureKind::FiniteCyclic;
            out.cyclic_order = to_long(Rational(denominator(s)));
            os << "Z/" << out.cyclic_order << " rotation groupoid, closure rank "
               << out.closure_rank;
        }
    }
    out.text = os.str();
    return out;
}

bool is_rotation_invariant(const Connection& c, uint32_t axis) {
    uint32_t fresh = intern_symbol("@rot");
    AffineMap rot = AffineMap::rotation(c.n_angles(), axis, AngleExpr::parameter_turns(fresh));
    for (size_t r = 0; r < c.omega().rows(); ++r)
        for (size_t cc = 0; cc < c.omega().cols(); ++cc)
            if (c.omega().at(r, cc).pullback(rot) != c.omega().at(r, cc)) return false;
    return true;
}

Connection haar_average_connection(const Connection& c, const KroneckerGroupoid& g,
                                   const HaarData& haar) {
    if (!g.is_irrational())
        throw std::invalid_argument(
            "averaging needs the pair-groupoid closure (irrational slope)");
    if (haar.fiber_mass != 1) throw std::invalid_argument("Haar fibers must have total mass one");
    if (c.bundle().base_angles != 1)
        throw std::invalid_argument("the closure acts on a bundle over the circle transversal");
    if (!check_connection(c)) throw std::invalid_argument("input fails the connection axioms");

    // integral of the rotated pullbacks against the normalized invariant
    // measure: every transversal-angle mode dies, the zero mode survives
    Matrix<Form> averaged = c.omega().map([&](const Form& f) {
        return f.map_scalars([](const Scalar& s) { return s.fiber_mean({0}); });
    });
    Connection out(c.bundle(), std::move(averaged));
    if (!check_connection(out)) throw std::logic_error("averaged form fails the connection axioms");
    if (!is_rotation_invariant(out, 0)) throw std::logic_error("averaged form is not invariant");
    return out;
}

}  // namespace torcal
