#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torcal/exterior.hpp"
#include "torcal/scalar.hpp"

#include "testgen.hpp"

using namespace torcal;

TEST_CASE("complex rational arithmetic") {
    ComplexRational a(Rational(1, 2), Rational(3));
    ComplexRational b(Rational(-2), Rational(1, 3));
    CHECK((a * b) / b == a);
    CHECK((a + b) - b == a);
    CHECK(ComplexRational::i() * ComplexRational::i() == ComplexRational(-1));
    CHECK(ComplexRational::unit_power(-1) == -ComplexRational::i());
    CHECK(ComplexRational(Rational(1, 2), Rational(-1)).str() == "1/2-i");
    CHECK(ComplexRational(Rational(0), Rational(2, 3)).str() == "2/3*i");
}

TEST_CASE("coeff ring basics") {
    Coeff a = Coeff::parameter("alpha");
    Coeff one = Coeff::one();
    CHECK((a - a).is_zero());
    CHECK(!(a * a + one).is_zero());
    CHECK((a * a - a * a).is_zero());
    CHECK(a * Coeff::i() == Coeff::i() * a);

    // quarter turns fold into gaussian units
    CHECK(Coeff::phase_turn(0, Rational(1, 2)) == Coeff(-1));
    CHECK(Coeff::phase_turn(0, Rational(1, 4)) == Coeff::i());
    CHECK(Coeff::phase_turn(0, Rational(5, 4)) == Coeff::i());
    CHECK(Coeff::phase_turn(0, Rational(-1, 4)) == -Coeff::i());
    CHECK_THROWS(Coeff::phase_turn(0, Rational(1, 3)));

    // formal phases are units with additive exponents
    uint32_t al = intern_symbol("alpha");
    Coeff u = Coeff::phase_turn(al, Rational(1));
    Coeff v = Coeff::phase_turn(al, Rational(-1));
    CHECK(u * v == one);
    CHECK(!(u - one).is_zero());
    CHECK(Coeff::phase_rad(al, Rational(2)) * Coeff::phase_rad(al, Rational(-2)) == one);
    // the two phase families are independent
    CHECK(!(Coeff::phase_rad(al, Rational(1)) - Coeff::phase_turn(al, Rational(1))).is_zero());
}

TEST_CASE("coeff exact division") {
    Coeff a = Coeff::parameter("alpha");
    Coeff b = Coeff::parameter("beta");
    Coeff p = (a * a - Coeff::one()) * (b + Coeff(2));
    auto q = p.exact_div(a - Coeff::one());
    REQUIRE(q.has_value());
    CHECK(*q == (a + Coeff::one()) * (b + Coeff(2)));
    CHECK(!p.exact_div(a + b).has_value());
    CHECK(!Coeff::one().exact_div(a).has_value());

    // units divide anything
    uint32_t al = intern_symbol("alpha");
    Coeff u = Coeff::phase_turn(al, Rational(1));
    auto r = Coeff::one().exact_div(u);
    REQUIRE(r.has_value());
    CHECK(*r * u == Coeff::one());
    Coeff f = u + u * u;
    auto s = (Coeff::one() + u).exact_div(f);
    REQUIRE(s.has_value());
    CHECK(*s * f == Coeff::one() + u);
}

TEST_CASE("coeff exponential and substitution") {
    uint32_t c = intern_symbol("cpar");
    Coeff mu = Coeff::i() * Coeff::parameter(c);  // i*c
    Coeff e = mu.exponential();
    CHECK(e == Coeff::phase_rad(c, Rational(1)));
    Coeff num = Coeff(ComplexRational(Rational(0), Rational(3, 2)));
    CHECK(num.exponential() == Coeff::phase_rad(0, Rational(3, 2)));
    CHECK_THROWS(Coeff::one().exponential());

    Coeff p = Coeff::parameter(c) * Coeff::parameter(c) + Coeff(1);
    CHECK(p.substitute(c, Rational(2)) == Coeff(5));
}

TEST_CASE("partial derivative examples") {
    // T^2 with angles (x, y) = axes (0, 1)
    Scalar one(2, 1);
    CHECK(one.partial_derivative(1).is_zero());

    Scalar ey = Scalar::exponential(2, {0, 1});
    CHECK(ey.partial_derivative(1) == ey * Coeff::i());

    Scalar cosy = Scalar::cosine(2, 1);
    Scalar siny = Scalar::sine(2, 1);
    CHECK(cosy.partial_derivative(1) == -siny);
    CHECK_THROWS(cosy.partial_derivative(2));
}

TEST_CASE("fiber mean examples") {
    Scalar f = Scalar(2, 1) + Scalar::cosine(2, 1);
    CHECK(f.fiber_mean({1}) == Scalar(2, 1));
    CHECK(Scalar::exponential(2, {0, 1}).fiber_mean({1}).is_zero());
    CHECK(f.fiber_mean({}) == f);
}

TEST_CASE("is_zero is exact") {
    Scalar cosy = Scalar::cosine(2, 1);
    Scalar siny = Scalar::sine(2, 1);
    CHECK((cosy * cosy + siny * siny - Scalar(2, 1)).is_zero());
    Scalar a = Scalar::exponential(2, {1, 0}, Coeff::parameter("alpha"));
    CHECK(!a.is_zero());
    Coeff alpha = Coeff::parameter("alpha");
    CHECK((Scalar::exponential(2, {1, 0}, alpha - alpha)).is_zero());
}

TEST_CASE("ring axioms on randomized scalars") {
    TestRng rng(20240811);
    for (int trial = 0; trial < 60; ++trial) {
        Scalar a = rng.scalar(2, 2), b = rng.scalar(2, 2), c = rng.scalar(2, 2);
        CHECK(((a * b) * c - a * (b * c)).is_zero());
        CHECK((a * (b + c) - a * b - a * c).is_zero());
        CHECK((a * b - b * a).is_zero());
    }
}

TEST_CASE("derivation property on randomized scalars") {
    TestRng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        Scalar a = rng.scalar(2, 2), b = rng.scalar(2, 2);
        Scalar lhs = (a * b).partial_derivative(0);
        Scalar rhs = a.partial_derivative(0) * b + a * b.partial_derivative(0);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("fiber mean is idempotent") {
    TestRng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        Scalar a = rng.scalar(3, 2);
        CHECK(a.fiber_mean({1}).fiber_mean({1}) == a.fiber_mean({1}));
        CHECK(a.fiber_mean({0, 2}).fiber_mean({0, 2}) == a.fiber_mean({0, 2}));
    }
}

TEST_CASE("pullback of scalars along affine maps") {
    // rotation by a formal angle c: exp(i y) -> exp(i c) exp(i y)
    uint32_t c = intern_symbol("cc");
    AffineMap rot = AffineMap::rotation(2, 1, AngleExpr::parameter_rads(c));
    Scalar ey = Scalar::exponential(2, {0, 1});
    CHECK(ey.pullback(rot) == ey * Coeff::phase_rad(c, Rational(1)));

    // rotation by pi: exp(i y) -> -exp(i y)
    AffineMap rpi = AffineMap::rotation(2, 1, AngleExpr::from_turns(Rational(1, 2)));
    CHECK(ey.pullback(rpi) == ey * Coeff(-1));

    // shear (x,y) -> (x+y, y): exp(i x) -> exp(i (x+y))
    AffineMap shear({{1, 1}, {0, 1}}, std::vector<AngleExpr>(2));
    Scalar ex = Scalar::exponential(2, {1, 0});
    CHECK(ex.pullback(shear) == Scalar::exponential(2, {1, 1}));
}
