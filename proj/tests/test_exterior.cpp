#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torcal/exterior.hpp"

#include "testgen.hpp"

using namespace torcal;

namespace {
Form dx(uint32_t n = 2) { return Form::d_angle(n, 0); }
Form dy(uint32_t n = 2) { return Form::d_angle(n, 1); }
}  // namespace

TEST_CASE("wedge basics") {
    CHECK(wedge(dx(), dy()) == Form::monomial(2, 0b11, Scalar(2, 1)));
    CHECK(wedge(dx(), dx()).is_zero());
    Form a = dx() * Scalar::cosine(2, 1);
    Form b = dy() * Scalar::exponential(2, {1, 0});
    Form expect = Form::monomial(2, 0b11, Scalar::cosine(2, 1) * Scalar::exponential(2, {1, 0}));
    CHECK(wedge(a, b) == expect);
    CHECK_THROWS(wedge(dx(2), dx(3)));
}

TEST_CASE("wedge graded commutativity") {
    TestRng rng(5150);
    for (int t = 0; t < 40; ++t) {
        int p = static_cast<int>(rng.integer(0, 2));
        int q = static_cast<int>(rng.integer(0, 2));
        Form a = rng.form(3, p), b = rng.form(3, q);
        Form lhs = wedge(a, b);
        Form rhs = wedge(b, a);
        if ((p * q) % 2 == 1) rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("exterior derivative examples") {
    CHECK(Form(2, Scalar(2, 7)).d().is_zero());
    // d(cos y) = -sin y dy
    CHECK(Form(2, Scalar::cosine(2, 1)).d() == dy() * (-Scalar::sine(2, 1)));
    // d(cos y dx) = sin y dx^dy   (hand Leibniz: -sin y dy^dx)
    Form f = dx() * Scalar::cosine(2, 1);
    CHECK(f.d() == Form::monomial(2, 0b11, Scalar::sine(2, 1)));
}

TEST_CASE("d squared vanishes on randomized forms") {
    TestRng rng(424242);
    for (int t = 0; t < 100; ++t) {
        Form a = rng.mixed_form(3, 2);
        CHECK(a.d().d().is_zero());
    }
}

TEST_CASE("interior product examples") {
    Form dxdy = wedge(dx(3), dy(3));
    CHECK(dxdy.interior(VectorField::coordinate(3, 0)) == dy(3));
    CHECK(dxdy.interior(VectorField::coordinate(3, 2)).is_zero());

    // Kronecker: i(dx+alpha dy)(dy - alpha dx) = alpha - alpha = 0
    Scalar alpha = Scalar::parameter(2, "alpha");
    VectorField v(2);
    v.set_component(0, Scalar(2, 1));
    v.set_component(1, alpha);
    Form basic = dy() - dx() * alpha;
    CHECK(basic.interior(v).is_zero());
}

TEST_CASE("interior product squares to zero and is linear") {
    TestRng rng(777);
    for (int t = 0; t < 40; ++t) {
        Form a = rng.mixed_form(3);
        VectorField v = rng.vector_field(3);
        CHECK(a.interior(v).interior(v).is_zero());
        Scalar s = rng.scalar(3, 1);
        CHECK(a.interior(v * s) == a.interior(v) * s);
    }
}

TEST_CASE("lie derivative examples") {
    // L_dx(e^{ix} dy) = i e^{ix} dy
    Form f = dy() * Scalar::exponential(2, {1, 0});
    CHECK(f.lie(VectorField::coordinate(2, 0)) == f * Coeff::i());
    CHECK(dy().lie(VectorField::coordinate(2, 0)).is_zero());
    // L_dy(cos y dx) = -sin y dx
    Form g = dx() * Scalar::cosine(2, 1);
    CHECK(g.lie(VectorField::coordinate(2, 1)) == dx() * (-Scalar::sine(2, 1)));
}

TEST_CASE("lie derivative is a derivation and commutes with d") {
    TestRng rng(31415);
    for (int t = 0; t < 40; ++t) {
        Form a = rng.form(3, 1), b = rng.form(3, 1);
        VectorField v = rng.vector_field(3);
        Form lhs = wedge(a, b).lie(v);
        Form rhs = wedge(a.lie(v), b) + wedge(a, b.lie(v));
        CHECK(lhs == rhs);
        CHECK(a.d().lie(v) == a.lie(v).d());
    }
}

TEST_CASE("bracket examples") {
    CHECK(bracket(VectorField::coordinate(2, 0), VectorField::coordinate(2, 1)).is_zero());

    // [dx + cos y dz, dy] = sin y dz
    VectorField v(3);
    v.set_component(0, Scalar(3, 1));
    v.set_component(2, Scalar::cosine(3, 1));
    VectorField expected(3);
    expected.set_component(2, Scalar::sine(3, 1));
    CHECK(bracket(v, VectorField::coordinate(3, 1)) == expected);
    CHECK(bracket(v, v).is_zero());
}

TEST_CASE("bracket is antisymmetric bilinear and satisfies jacobi") {
    TestRng rng(8);
    for (int t = 0; t < 40; ++t) {
        VectorField u = rng.vector_field(2), v = rng.vector_field(2), w = rng.vector_field(2);
        CHECK(bracket(u, v) == -bracket(v, u));
        Form probe(2, rng.scalar(2, 1));
        VectorField jac = bracket(u, bracket(v, w)) + bracket(v, bracket(w, u)) +
                          bracket(w, bracket(u, v));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("i([V,W]) = [L_V, i(W)] on randomized inputs") {
    TestRng rng(160);
    for (int t = 0; t < 40; ++t) {
        VectorField v = rng.vector_field(3), w = rng.vector_field(3);
        Form a = rng.mixed_form(3);
        Form lhs = a.interior(bracket(v, w));
        Form rhs = a.interior(w).lie(v) - a.lie(v).interior(w);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("pullback examples") {
    uint32_t c = intern_symbol("cc");
    AffineMap rot = AffineMap::rotation(2, 1, AngleExpr::parameter_rads(c));
    CHECK(dy().pullback(rot) == dy());

    Form f = dy() * Scalar::exponential(2, {0, 1});
    CHECK(f.pullback(rot) == f * Coeff::phase_rad(c, Rational(1)));

    AffineMap shear({{1, 1}, {0, 1}}, std::vector<AngleExpr>(2));
    CHECK(dx().pullback(shear) == dx() + dy());
}

TEST_CASE("pullback functoriality and compatibility") {
    TestRng rng(2024);
    uint32_t c = intern_symbol("cc");
    AffineMap g({{1, 1}, {0, 1}}, {AngleExpr::parameter_rads(c), AngleExpr::from_turns(Rational(1, 2))});
    AffineMap h({{0, 1}, {1, 0}}, {AngleExpr::from_rads(Rational(2, 3)), AngleExpr{}});
    AffineMap gh = g.compose(h);
    for (int t = 0; t < 40; ++t) {
        Form a = rng.mixed_form(2), b = rng.mixed_form(2);
        CHECK(a.pullback(gh) == a.pullback(g).pullback(h));
        CHECK(a.d().pullback(g) == a.pullback(g).d());
        CHECK(wedge(a, b).pullback(g) == wedge(a.pullback(g), b.pullback(g)));
    }
}
