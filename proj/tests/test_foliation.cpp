#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torcal/foliation.hpp"

#include "testgen.hpp"

using namespace torcal;

namespace {

VectorField kronecker_generator() {
    VectorField v(2);
    v.set_component(0, Scalar(2, 1));
    v.set_component(1, Scalar::parameter(2, "alpha"));
    return v;
}

Foliation kronecker() { return Foliation({kronecker_generator()}, 1); }

Foliation product_t2() { return Foliation({VectorField::coordinate(2, 0)}, 1); }

/// Suspension-style generator dx + cos y dz on T^3.
VectorField suspension_generator() {
    VectorField v(3);
    v.set_component(0, Scalar(3, 1));
    v.set_component(2, Scalar::cosine(3, 1));
    return v;
}

}  // namespace

TEST_CASE("foliation validation") {
    CHECK_NOTHROW(kronecker());
    CHECK_NOTHROW(Foliation({suspension_generator()}, 1));
    // dependent constant generators are rejected
    VectorField v = VectorField::coordinate(2, 0);
    CHECK_THROWS(Foliation({v, v}, 2));
    CHECK_THROWS(Foliation({v}, 2));
    // cos y d/dx drops rank at y = pi/2
    VectorField w(2);
    w.set_component(0, Scalar::cosine(2, 1));
    CHECK_THROWS(Foliation({w}, 1));
}

TEST_CASE("check_involutive examples") {
    auto r1 = check_involutive(kronecker(), 2);
    CHECK(r1.status == SpanStatus::InSpan);
    CHECK(r1.bracket_coefficients.empty());

    auto r2 = check_involutive(Foliation({suspension_generator()}, 1), 2);
    CHECK(r2.status == SpanStatus::InSpan);

    // {dx, dy + cos x dz} is not involutive: [dx, dy + cos x dz] = -sin x dz
    VectorField g2(3);
    g2.set_component(1, Scalar(3, 1));
    g2.set_component(2, Scalar::cosine(3, 0));
    Foliation bad({VectorField::coordinate(3, 0), g2}, 2);
    auto r3 = check_involutive(bad, 2);
    CHECK(r3.status == SpanStatus::NotInSpan);
    CHECK(r3.offending_a == 0);
    CHECK(r3.offending_b == 1);
    VectorField expect(3);
    expect.set_component(2, -Scalar::sine(3, 0));
    CHECK(r3.offending_bracket == expect);
    CHECK(!r3.certificate.empty());

    // an involutive pair with witness coefficients
    Foliation flat({VectorField::coordinate(3, 0), VectorField::coordinate(3, 1)}, 2);
    auto r4 = check_involutive(flat, 1);
    CHECK(r4.status == SpanStatus::InSpan);
    REQUIRE(r4.bracket_coefficients.size() == 1);
    for (const Scalar& c : r4.bracket_coefficients[0]) CHECK(c.is_zero());
}

TEST_CASE("is_basic_form examples") {
    Foliation k = kronecker();
    Scalar alpha = Scalar::parameter(2, "alpha");
    Form basic = Form::d_angle(2, 1) - Form::d_angle(2, 0) * alpha;
    CHECK(is_basic_form(k, basic));
    CHECK(!is_basic_form(k, Form::d_angle(2, 0)));

    Foliation p = product_t2();
    Form hdy = Form::d_angle(2, 1) * Scalar::cosine(2, 1);
    CHECK(is_basic_form(p, hdy));
}

TEST_CASE("basic forms are a differential subalgebra") {
    // for span{dx} basic forms are exactly the x-free forms in dy
    Foliation p = product_t2();
    TestRng rng(1234);
    for (int t = 0; t < 30; ++t) {
        Scalar h1 = rng.scalar(2, 2), h2 = rng.scalar(2, 2);
        Scalar y1 = h1.fiber_mean({0}), y2 = h2.fiber_mean({0});  // remove x modes
        Form a = Form(2, y1) + Form::d_angle(2, 1) * y2;
        REQUIRE(is_basic_form(p, a));
        CHECK(is_basic_form(p, a.d()));
        Form b = Form::d_angle(2, 1) * y1;
        CHECK(is_basic_form(p, wedge(a, b)));
    }
}

TEST_CASE("bott derivative examples") {
    Foliation p = product_t2();
    VectorField z = VectorField::coordinate(2, 0);
    // invariant section dy: derivative vanishes
    CHECK(bott_derivative(p, z, VectorField::coordinate(2, 1), 2).is_zero());

    // s = cos x dy: Bott derivative = -sin x dy mod F
    VectorField s(2);
    s.set_component(1, Scalar::cosine(2, 0));
    VectorField expect(2);
    expect.set_component(1, -Scalar::sine(2, 0));
    CHECK(bott_derivative(p, z, s, 2) == expect);

    // representative change s -> s + dx gives the same class
    VectorField s2 = s + VectorField::coordinate(2, 0);
    CHECK(normal_equal(p, bott_derivative(p, z, s, 2), bott_derivative(p, z, s2, 2), 3) ==
          SpanStatus::InSpan);

    CHECK_THROWS(bott_derivative(p, VectorField::coordinate(2, 1), s, 2));
}

TEST_CASE("bott derivative is representative independent on random sections") {
    Foliation p = product_t2();
    VectorField z = VectorField::coordinate(2, 0);
    TestRng rng(55);
    for (int t = 0; t < 20; ++t) {
        VectorField s = rng.vector_field(2, 1);
        VectorField shift = z * rng.scalar(2, 1);  // tangent perturbation
        VectorField d1 = bott_derivative(p, z, s, 3);
        VectorField d2 = bott_derivative(p, z, s + shift, 3);
        CHECK(normal_equal(p, d1, d2, 4) == SpanStatus::InSpan);
    }
}

TEST_CASE("closure rank examples") {
    CHECK(closure_rank(kronecker()) == 2);  // dense leaves

    VectorField v12(2);
    v12.set_component(0, Scalar(2, 1));
    v12.set_component(1, Scalar(2, 2));
    CHECK(closure_rank(Foliation({v12}, 1)) == 1);

    CHECK(closure_rank(product_t2()) == 1);
    CHECK_THROWS(closure_rank(Foliation({suspension_generator()}, 1)));

    // closure_rank >= declared rank, equality iff leaves closed
    VectorField w(3);
    w.set_component(0, Scalar(3, 1));
    w.set_component(1, Scalar::parameter(3, "alpha"));
    Foliation f({w, VectorField::coordinate(3, 2)}, 2);
    CHECK(closure_rank(f) == 3);
}

TEST_CASE("basic cohomology dims") {
    // Kronecker: (1,1,0) at cutoffs 2,3,4 (stable)
    for (long cutoff : {2L, 3L, 4L}) {
        auto dims = basic_cohomology_dims(kronecker(), cutoff);
        REQUIRE(dims.size() == 3);
        CHECK(dims[0] == 1);
        CHECK(dims[1] == 1);
        CHECK(dims[2] == 0);
    }
    // product foliation: matches H(S^1) = (1,1)
    auto dims = basic_cohomology_dims(product_t2(), 3);
    CHECK(dims[0] == 1);
    CHECK(dims[1] == 1);
    CHECK(dims[2] == 0);
    // full tangent foliation: only constants
    Foliation full({VectorField::coordinate(2, 0), VectorField::coordinate(2, 1)}, 2);
    auto dims2 = basic_cohomology_dims(full, 3);
    CHECK(dims2 == std::vector<size_t>{1, 0, 0});
}

TEST_CASE("transverse metric checks") {
    Foliation p = product_t2();
    Matrix<Scalar> one(1, 1, Scalar(2, 1));
    TransverseMetric dydy({Form::d_angle(2, 1)}, one);
    CHECK(check_transverse_metric(p, dydy));

    Matrix<Scalar> bad(1, 1, Scalar(2, 1) + Scalar::cosine(2, 0));
    TransverseMetric gb({Form::d_angle(2, 1)}, bad);
    CHECK(!check_transverse_metric(p, gb));

    // Kronecker: (dy - alpha dx) x (dy - alpha dx) is invariant
    Foliation k = kronecker();
    Scalar alpha = Scalar::parameter(2, "alpha");
    Form cof = Form::d_angle(2, 1) - Form::d_angle(2, 0) * alpha;
    TransverseMetric gk({cof}, Matrix<Scalar>(1, 1, Scalar(2, 1)));
    CHECK(check_transverse_metric(k, gk));

    // coframe must annihilate the foliation
    TransverseMetric gx({Form::d_angle(2, 0)}, one);
    CHECK_THROWS(check_transverse_metric(p, gx));
}
