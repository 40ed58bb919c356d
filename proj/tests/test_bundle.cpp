#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torcal/bundle.hpp"

#include "testgen.hpp"

using namespace torcal;

namespace {

Form dcoord(uint32_t n, uint32_t axis) { return Form::d_angle(n, axis); }

/// T^2 base (x,y), S^1 fiber (z).
Bundle t2s1() { return Bundle{2, 1, 0}; }

/// span{dx + cos y dz} on T^3 (the Prop 4.1.1 foliation).
Foliation suspension_cos() {
    VectorField v(3);
    v.set_component(0, Scalar(3, 1));
    v.set_component(2, Scalar::cosine(3, 1));
    return Foliation({v}, 1);
}

/// span{dx + c dz} with formal constant c.
Foliation suspension_const() {
    VectorField v(3);
    v.set_component(0, Scalar(3, 1));
    v.set_component(2, Scalar::parameter(3, "c"));
    return Foliation({v}, 1);
}

}  // namespace

TEST_CASE("check_connection examples") {
    CHECK(check_connection(Connection(t2s1(), dcoord(3, 2))));
    CHECK(!check_connection(Connection(t2s1(), dcoord(3, 2) * Scalar(3, 2))));
    Form bad = dcoord(3, 2) + dcoord(3, 0) * Scalar::cosine(3, 2);
    CHECK(!check_connection(Connection(t2s1(), bad)));
}

TEST_CASE("check_basic_connection examples") {
    // omega = -c dx + dz, F = span{dx + c dz} -> basic
    Scalar c = Scalar::parameter(3, "c");
    Connection good(t2s1(), dcoord(3, 2) - dcoord(3, 0) * c);
    CHECK(check_basic_connection(good, suspension_const()) == BasicClass::Basic);

    // omega = -cos y dx + dz, F = span{dx + cos y dz} -> adapted, not basic
    Connection adapted(t2s1(), dcoord(3, 2) - dcoord(3, 0) * Scalar::cosine(3, 1));
    CHECK(check_basic_connection(adapted, suspension_cos()) == BasicClass::Adapted);

    Foliation fx({VectorField::coordinate(3, 0)}, 1);
    CHECK(check_basic_connection(Connection(t2s1(), dcoord(3, 2)), fx) == BasicClass::Basic);
    CHECK(check_basic_connection(Connection(t2s1(), dcoord(3, 0) + dcoord(3, 2)), fx) ==
          BasicClass::Neither);
}

TEST_CASE("curvature examples") {
    CHECK(matrix_is_zero(curvature(Connection(t2s1(), dcoord(3, 2)))));

    // omega = dz + cos y dx: curvature = sin y dx^dy
    Connection c(t2s1(), dcoord(3, 2) + dcoord(3, 0) * Scalar::cosine(3, 1));
    Matrix<Form> r = curvature(c);
    CHECK(r.at(0, 0) == Form::monomial(3, 0b011, Scalar::sine(3, 1)));

    // diagonal 2x2: entrywise d
    Bundle mb{2, 1, 2};
    Matrix<Form> omega(2, 2, Form(3));
    omega.at(0, 0) = dcoord(3, 2);
    omega.at(1, 1) = dcoord(3, 2) * Scalar(3, 2) + dcoord(3, 0) * Scalar::cosine(3, 1);
    Matrix<Form> rm = curvature(Connection(mb, omega));
    CHECK(rm.at(0, 0).is_zero());
    CHECK(rm.at(1, 1) == Form::monomial(3, 0b011, Scalar::sine(3, 1)));
    CHECK(rm.at(0, 1).is_zero());
}

TEST_CASE("bianchi and curvature horizontality") {
    TestRng rng(99);
    Foliation fx({VectorField::coordinate(3, 0)}, 1);
    for (int t = 0; t < 25; ++t) {
        // random fiber-invariant connection dz + (x,y)-dependent horizontal part
        Scalar a = rng.scalar(3, 1).fiber_mean({2});
        Scalar b = rng.scalar(3, 1).fiber_mean({2});
        Connection c(t2s1(), dcoord(3, 2) + dcoord(3, 0) * a + dcoord(3, 1) * b);
        REQUIRE(check_connection(c));
        Matrix<Form> r = curvature(c);
        // abelian Bianchi: dR = 0
        CHECK(matrix_is_zero(matrix_d(r)));
        // basic connections have horizontal curvature
        Scalar h = rng.scalar(3, 1).fiber_mean({0, 2});  // y only
        Connection basic(t2s1(), dcoord(3, 2) + dcoord(3, 1) * h);
        REQUIRE(check_basic_connection(basic, fx) == BasicClass::Basic);
        Matrix<Form> rb = curvature(basic);
        CHECK(matrix_is_zero(matrix_interior(rb, VectorField::coordinate(3, 0))));
    }
}

TEST_CASE("basic connection solver: feasible constant case") {
    auto res = basic_connection_solve(t2s1(), suspension_const(), 2);
    REQUIRE(res.status == FeasStatus::Feasible);
    REQUIRE(res.connection.has_value());
    CHECK(check_connection(*res.connection));
    CHECK(check_basic_connection(*res.connection, suspension_const()) == BasicClass::Basic);
    // the witness is the expected -c dx + dz up to gauge; i(V) kills it
    Scalar c = Scalar::parameter(3, "c");
    CHECK(res.connection->omega().at(0, 0) == dcoord(3, 2) - dcoord(3, 0) * c);
}

TEST_CASE("prop 4.1.1: no basic connection over the cosine suspension") {
    Foliation f = suspension_cos();
    for (long cutoff : {1L, 2L, 3L}) {
        auto res = basic_connection_solve(t2s1(), f, cutoff);
        REQUIRE(res.status == FeasStatus::Infeasible);
        CHECK(!res.certificate.empty());
        CHECK(!res.certificate_rhs.is_zero());
        CHECK(verify_basic_connection_certificate(t2s1(), f, cutoff + 3, res.certificate));
    }
}

TEST_CASE("prop 4.2.1: kronecker-driven action, still infeasible") {
    // T^4 (x,y,z,w), F = span{dx + alpha dy + cos z dw}
    VectorField v(4);
    v.set_component(0, Scalar(4, 1));
    v.set_component(1, Scalar::parameter(4, "alpha"));
    v.set_component(3, Scalar::cosine(4, 2));
    Foliation f({v}, 1);
    Bundle b{3, 1, 0};
    auto res = basic_connection_solve(b, f, 1);
    REQUIRE(res.status == FeasStatus::Infeasible);
    CHECK(verify_basic_connection_certificate(b, f, 3, res.certificate));
}

TEST_CASE("metric from connection") {
    // omega = dz, F = span{dx} on T^3, g_base = dy x dy
    Foliation fx({VectorField::coordinate(3, 0)}, 1);
    TransverseMetric gb({dcoord(3, 1)}, Matrix<Scalar>(1, 1, Scalar(3, 1)));
    Connection flat(t2s1(), dcoord(3, 2));
    TransverseMetric g1 = metric_from_connection(flat, fx, gb);
    CHECK(g1.coframe().size() == 2);
    CHECK(check_transverse_metric(fx, g1));

    // omega = -c dx + dz, F = span{dx + c dz}
    Foliation fc = suspension_const();
    Scalar c = Scalar::parameter(3, "c");
    Connection conn(t2s1(), dcoord(3, 2) - dcoord(3, 0) * c);
    TransverseMetric g2 = metric_from_connection(conn, fc, gb);
    CHECK(check_transverse_metric(fc, g2));

    // non-basic input is rejected
    Connection adapted(t2s1(), dcoord(3, 2) - dcoord(3, 0) * Scalar::cosine(3, 1));
    CHECK_THROWS(metric_from_connection(adapted, suspension_cos(), gb));
}

TEST_CASE("connection reduction (eq 5.19 toy)") {
    // omega = dz + cos y dy, frame {(dy, d/dy)} -> dz
    Connection c(t2s1(), dcoord(3, 2) + dcoord(3, 1) * Scalar::cosine(3, 1));
    auto frame = std::vector<std::pair<Form, VectorField>>{{dcoord(3, 1), VectorField::coordinate(3, 1)}};
    Connection reduced = reduce_connection(c, frame);
    CHECK(reduced.omega().at(0, 0) == dcoord(3, 2));

    // already horizontal: unchanged
    Connection flat(t2s1(), dcoord(3, 2));
    CHECK(reduce_connection(flat, frame) == flat);

    // two-step subtraction
    Scalar beta = Scalar::parameter(3, "beta");
    Scalar gamma = Scalar::parameter(3, "gamma");
    Connection c2(t2s1(), dcoord(3, 2) + dcoord(3, 1) * beta + dcoord(3, 0) * gamma);
    auto frame2 = std::vector<std::pair<Form, VectorField>>{
        {dcoord(3, 1), VectorField::coordinate(3, 1)}, {dcoord(3, 0), VectorField::coordinate(3, 0)}};
    CHECK(reduce_connection(c2, frame2).omega().at(0, 0) == dcoord(3, 2));

    // horizontality of the output: i(Y_k) omega_bar = 0 and i(Y_k) d omega_bar = 0
    Connection r2 = reduce_connection(c2, frame2);
    for (const auto& [theta, y] : frame2) {
        CHECK(r2.omega().at(0, 0).interior(y).is_zero());
        CHECK(r2.omega().at(0, 0).d().interior(y).is_zero());
    }

    // duality violations are rejected
    auto bad = std::vector<std::pair<Form, VectorField>>{{dcoord(3, 1) * Scalar(3, 2), VectorField::coordinate(3, 1)}};
    CHECK_THROWS(reduce_connection(c, bad));
}

TEST_CASE("transgression") {
    Foliation fx({VectorField::coordinate(3, 0)}, 1);
    Bundle mb{2, 1, 1};
    // c0 trivial (omega = 0 matrix entries), c1 - c0 = i cos y dz
    Connection c0(mb, Form(3));
    Connection c1(mb, dcoord(3, 2) * (Scalar::cosine(3, 1) * Coeff::i()));
    Form t = transgression_form(c0, c1, fx);
    Form expect_deg1 = dcoord(3, 2) * (Scalar::cosine(3, 1) * (-Coeff::i()));
    CHECK(t.degree_component(1) == expect_deg1);

    // dT = Ch1 - Ch0 exactly, checked via the curvature exponentials
    Form ch0(3, Scalar(3, 1));
    Form r1 = curvature(c1).at(0, 0);
    Form ch1 = form_exponential_nilpotent(-r1);
    CHECK(t.d() == ch1 - ch0);

    CHECK(transgression_form(c1, c1, fx).is_zero());

    // flat difference: closed T, equal chern forms
    Connection c2(mb, dcoord(3, 1) * Coeff::i());
    Form t2 = transgression_form(c0, c2, fx);
    CHECK(t2.d().is_zero());
}
