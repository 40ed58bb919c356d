#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torcal/groupoid.hpp"

#include "testgen.hpp"

using namespace torcal;

TEST_CASE("orbit examples") {
    auto g = KroneckerGroupoid::irrational("alpha");
    auto zero = CircleAngle::from_turns(Rational(0));

    auto o0 = return_map_orbit(g, zero, 0);
    CHECK(o0.angles.size() == 1);
    CHECK(o0.angles[0] == zero);
    CHECK(o0.all_distinct);

    auto o2 = return_map_orbit(g, zero, 2);
    REQUIRE(o2.angles.size() == 3);
    CHECK(o2.angles[1] == CircleAngle::parameter(intern_symbol("alpha")));
    CHECK(o2.angles[2] == CircleAngle::parameter(intern_symbol("alpha"), Rational(2)));
    CHECK(o2.all_distinct);
    CHECK(o2.angles[1].str() == "2*pi*alpha");

    // rational slope 1/2: period 2
    auto h = KroneckerGroupoid::rational(Rational(1, 2));
    auto o3 = return_map_orbit(h, zero, 3);
    REQUIRE(o3.angles.size() == 4);
    CHECK(o3.angles[0] == zero);
    CHECK(o3.angles[1] == CircleAngle::from_turns(Rational(1, 2)));
    CHECK(o3.angles[2] == zero);
    CHECK(o3.angles[3] == CircleAngle::from_turns(Rational(1, 2)));
    CHECK(!o3.all_distinct);
}

TEST_CASE("closure description") {
    auto g = KroneckerGroupoid::irrational("alpha");
    auto d = closure_description(g);
    CHECK(d.kind == ClosureKind::PairGroupoid);
    CHECK(d.closure_rank == 2);
    CHECK(d.text == "pair groupoid of the transversal (dense orbits), closure rank 2");

    auto h = KroneckerGroupoid::rational(Rational(1, 2));
    auto dh = closure_description(h);
    CHECK(dh.kind == ClosureKind::FiniteCyclic);
    CHECK(dh.cyclic_order == 2);
    CHECK(dh.closure_rank == 1);

    auto t = KroneckerGroupoid::rational(Rational(0));
    auto dt = closure_description(t);
    CHECK(dt.kind == ClosureKind::Trivial);
    CHECK(dt.closure_rank == 1);
}

TEST_CASE("haar averaging examples") {
    // bundle over the transversal circle: theta = axis 0, fiber z = axis 1
    Bundle b{1, 1, 0};
    auto g = KroneckerGroupoid::irrational("alpha");
    HaarData haar;

    // omega = dz + (1 + cos theta) dtheta -> dz + dtheta
    Form omega = Form::d_angle(2, 1) + Form::d_angle(2, 0) * (Scalar(2, 1) + Scalar::cosine(2, 0));
    Connection c(b, omega);
    Connection avg = haar_average_connection(c, g, haar);
    CHECK(avg.omega().at(0, 0) == Form::d_angle(2, 1) + Form::d_angle(2, 0));
    CHECK(check_connection(avg));

    // already invariant: unchanged; averaging is a projection
    CHECK(haar_average_connection(avg, g, haar) == avg);

    // omega = dz + e^{i theta} dtheta -> dz
    Form omega2 = Form::d_angle(2, 1) + Form::d_angle(2, 0) * Scalar::exponential(2, {1, 0});
    Connection avg2 = haar_average_connection(Connection(b, omega2), g, haar);
    CHECK(avg2.omega().at(0, 0) == Form::d_angle(2, 1));

    // symbolic rotation invariance is certified, and fails for the input
    CHECK(is_rotation_invariant(avg, 0));
    CHECK(!is_rotation_invariant(c, 0));

    // preconditions
    CHECK_THROWS(haar_average_connection(c, KroneckerGroupoid::rational(Rational(1, 2)), haar));
    HaarData bad;
    bad.fiber_mass = Rational(2);
    CHECK_THROWS(haar_average_connection(c, g, bad));
}

TEST_CASE("averaging is a projection and commutes with fiber translations") {
    Bundle b{1, 1, 0};
    auto g = KroneckerGroupoid::irrational("alpha");
    HaarData haar;
    TestRng rng(77);
    uint32_t fresh = intern_symbol("@g_cert");
    for (int t = 0; t < 25; ++t) {
        // random fiber-invariant connection over the transversal
        Scalar h = rng.scalar(2, 2).fiber_mean({1});
        Connection c(b, Form::d_angle(2, 1) + Form::d_angle(2, 0) * h);
        REQUIRE(check_connection(c));
        Connection avg = haar_average_connection(c, g, haar);
        CHECK(haar_average_connection(avg, g, haar) == avg);
        CHECK(is_rotation_invariant(avg, 0));
        // G-invariance: averaging commutes with the structure translation,
        // certified by a symbolic fiber rotation
        AffineMap rot = AffineMap::rotation(2, 1, AngleExpr::parameter_turns(fresh));
        Connection rotated(b, c.omega().at(0, 0).pullback(rot));
        CHECK(haar_average_connection(rotated, g, haar).omega().at(0, 0) ==
              avg.omega().at(0, 0).pullback(rot));
    }
}
