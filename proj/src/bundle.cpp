#include "torcal/bundle.hpp"

namespace torcal {

Matrix<Scalar> Bundle::vertical_target(uint32_t j) const {
    size_t N = rank();
    uint32_t n = n_total();
    Matrix<Scalar> m(N, N, Scalar(n));
    if (matrix_rank == 0) {
        m.at(j, j) = Scalar(n, 1);
    } else {
        for (size_t i = 0; i < N; ++i) m.at(i, i) = Scalar(n, 1);
    }
    return m;
}

Matrix<Form> matrix_d(const Matrix<Form>& m) {
    return m.map([](const Form& f) { return f.d(); });
}

Matrix<Form> matrix_wedge(const Matrix<Form>& a, const Matrix<Form>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Matrix<Form> out(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); ++r)
        for (size_t c = 0; c < b.cols(); ++c) {
            Form acc;
            bool started = false;
            for (size_t k = 0; k < a.cols(); ++k) {
                Form w = wedge(a.at(r, k), b.at(k, c));
                if (!started) {
                    acc = std::move(w);
                    started = true;
                } else {
                    acc += w;
                }
            }
            out.at(r, c) = std::move(acc);
        }
    return out;
}

Matrix<Form> matrix_interior(const Matrix<Form>& m, const VectorField& v) {
    return m.map([&v](const Form& f) { return f.interior(v); });
}

Matrix<Form> matrix_lie(const Matrix<Form>& m, const VectorField& v) {
    return m.map([&v](const Form& f) { return f.lie(v); });
}

bool matrix_is_zero(const Matrix<Form>& m) {
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) return false;
    return true;
}

Form form_exponential_nilpotent(const Form& x) {
    if (!x.degree_component(0).is_zero())
        throw std::invalid_argument("exponential needs a form without degree-0 part");
    uint32_t n = x.n_angles();
    Form sum(n, Scalar(n, 1));
    Form power(n, Scalar(n, 1));
    Rational factorial(1);
    for (long m = 1; m <= static_cast<long>(n); ++m) {
        power = wedge(power, x);
        if (power.is_zero()) break;
        factorial *= m;
        sum += power * Coeff(Rational(1) / factorial);
    }
    return sum;
}

Connection::Connection(Bundle bundle, Matrix<Form> omega)
    : bundle_(bundle), omega_(std::move(omega)) {
    size_t N = bundle_.rank();
    if (omega_.rows() != N || omega_.cols() != N)
        throw std::invalid_argument("connection matrix shape mismatch");
    for (size_t r = 0; r < N; ++r)
        for (size_t c = 0; c < N; ++c) {
            const Form& f = omega_.at(r, c);
            if (f.n_angles() != bundle_.n_total())
                throw std::invalid_argument("connection form dimension mismatch");
            if (!f.is_zero() && !f.is_homogeneous(1))
                throw std::invalid_argument("connection entries must be 1-forms");
        }
    if (bundle_.matrix_rank != 0 && bundle_.fiber_angles != 1)
        throw std::invalid_argument("matrix-rank bundles use a single fiber direction");
}

Connection::Connection(Bundle bundle, Form omega)
    : Connection(bundle, Matrix<Form>(1, 1, std::move(omega))) {
    if (bundle_.rank() != 1) throw std::invalid_argument("scalar connection needs rank 1");
}

bool Connection::diagonal() const {
    return omega_.is_diagonal(Form(bundle_.n_total()));
}

bool check_connection(const Connection& c) {
    const Bundle& b = c.bundle();
    for (uint32_t j = 0; j < b.fiber_angles; ++j) {
        VectorField w = VectorField::coordinate(b.n_total(), b.fiber_axis(j));
        Matrix<Form> contracted = matrix_interior(c.omega(), w);
        Matrix<Scalar> target = b.vertical_target(j);
        for (size_t r = 0; r < contracted.rows(); ++r)
            for (size_t cc = 0; cc < contracted.cols(); ++cc) {
                Form want(b.n_total(), target.at(r, cc));
                if (contracted.at(r, cc) != want) return false;
            }
        if (!matrix_is_zero(matrix_lie(c.omega(), w))) return false;
    }
    return true;
}

BasicClass check_basic_connection(const Connection& c, const Foliation& fp) {
    if (fp.n_angles() != c.n_angles()) throw std::invalid_argument("torus dimension mismatch");
    Matrix<Form> domega = matrix_d(c.omega());
    bool adapted = true, basic = true;
    for (const VectorField& z : fp.generators()) {
        if (!matrix_is_zero(matrix_interior(c.omega(), z))) adapted = false;
        if (!matrix_is_zero(matrix_interior(domega, z))) basic = false;
    }
    if (adapted && basic) return BasicClass::Basic;
    if (adapted) return BasicClass::Adapted;
    return BasicClass::Neither;
}

Matrix<Form> curvature(const Connection& c) {
    return matrix_d(c.omega()) + matrix_wedge(c.omega(), c.omega());
}

namespace {

struct UnknownConnection {
    UnknownPool pool;
    std::vector<Form> omega;  // one 1-form per fiber component
};

UnknownConnection build_unknown_connection(const Bundle& bundle, long cutoff) {
    UnknownConnection out;
    uint32_t n = bundle.n_total();
    for (uint32_t l = 0; l < bundle.fiber_angles; ++l) {
        Form f(n);
        for (uint32_t i = 0; i < n; ++i)
            f += Form::monomial(n, WedgeMask(1) << i, unknown_scalar(out.pool, n, cutoff));
        out.omega.push_back(std::move(f));
    }
    return out;
}

void add_connection_constraints(LinearSystem& sys, const Bundle& bundle, const Foliation& fp,
                                const std::vector<Form>& omega) {
    uint32_t n = bundle.n_total();
    for (uint32_t l = 0; l < bundle.fiber_angles; ++l) {
        std::string pl = "w" + std::to_string(l);
        Form domega = omega[l].d();
        for (uint32_t j = 0; j < bundle.fiber_angles; ++j) {
            VectorField w = VectorField::coordinate(n, bundle.fiber_axis(j));
            Scalar target(n, j == l ? 1 : 0);
            Form contracted = omega[l].interior(w);
            sys.add_form_equation("vert." + pl + ".f" + std::to_string(j),
                                  contracted - Form(n, target));
            sys.add_form_equation("inv." + pl + ".f" + std::to_string(j),
                                  contracted.d() + domega.interior(w));
        }
        for (size_t g = 0; g < fp.generators().size(); ++g) {
            const VectorField& z = fp.generators()[g];
            sys.add_form_equation("adapt." + pl + ".g" + std::to_string(g), omega[l].interior(z));
            sys.add_form_equation("basic." + pl + ".g" + std::to_string(g), domega.interior(z));
        }
    }
}

}  // namespace

BasicConnectionResult basic_connection_solve(const Bundle& bundle, const Foliation& fp, long cutoff) {
    if (bundle.matrix_rank != 0)
        throw std::invalid_argument("the feasibility solver works on abelian torus fibers");
    if (fp.n_angles() != bundle.n_total()) throw std::invalid_argument("torus dimension mismatch");
    long bw = fp.bandwidth();
    if (cutoff < bw)
        throw std::invalid_argument("cutoff " + std::to_string(cutoff) +
                                    " below the generator bandwidth " + std::to_string(bw));

    UnknownConnection u = build_unknown_connection(bundle, cutoff);
    LinearSystem sys(u.pool);
    add_connection_constraints(sys, bundle, fp, u.omega);
    SolveResult res = sys.solve();

    BasicConnectionResult out;
    if (res.status == SolveStatus::Feasible) {
        out.status = FeasStatus::Feasible;
        size_t f = bundle.fiber_angles;
        Matrix<Form> omega(f, f, Form(bundle.n_total()));
        for (uint32_t l = 0; l < f; ++l)
            omega.at(l, l) = u.omega[l].map_scalars(
                [&](const Scalar& s) { return substitute_solution(s, res.solution, u.pool); });
        out.connection = Connection(bundle, std::move(omega));
        if (!check_connection(*out.connection) ||
            check_basic_connection(*out.connection, fp) != BasicClass::Basic)
            throw std::logic_error("solver produced a witness that fails its own checks");
        return out;
    }

    // certificate hunt at increasing mode levels: equations restricted to
    // modes <= M with unknowns at bandwidth M + bw see their full column
    // sets, so a Farkas combination there refutes connections of every
    // bandwidth. Certificates tend to live at low modes (the zero-mode
    // argument of the counterexamples), so deepen lazily.
    long bw1 = std::max(bw, 1L);
    for (long level = bw1; level <= cutoff + bw1; ++level) {
        UnknownConnection u2 = build_unknown_connection(bundle, level + bw1);
        LinearSystem sys2(u2.pool);
        sys2.limit_equation_modes(level);
        add_connection_constraints(sys2, bundle, fp, u2.omega);
        SolveResult res2 = sys2.solve();
        if (res2.status != SolveStatus::Infeasible) continue;
        out.status = FeasStatus::Infeasible;
        out.certificate = std::move(res2.certificate);
        out.certificate_rhs = std::move(res2.certificate_rhs);
        return out;
    }
    out.status = FeasStatus::CutoffInsufficient;
    out.detail = "truncated system infeasible, but no bandwidth-independent certificate up to mode " +
                 std::to_string(cutoff + bw1);
    return out;
}

bool verify_basic_connection_certificate(const Bundle& bundle, const Foliation& fp, long cutoff,
                                         const std::vector<CertTerm>& certificate) {
    UnknownConnection u = build_unknown_connection(bundle, cutoff);
    LinearSystem sys(u.pool);
    add_connection_constraints(sys, bundle, fp, u.omega);
    return sys.combination_vanishes(certificate) && !sys.combination_rhs(certificate).is_zero();
}

TransverseMetric metric_from_connection(const Connection& c, const Foliation& fp,
                                        const TransverseMetric& g_base) {
    const Bundle& b = c.bundle();
    if (b.matrix_rank != 0)
        throw std::invalid_argument("metric construction works on abelian torus fibers");
    if (check_basic_connection(c, fp) != BasicClass::Basic)
        throw std::invalid_argument("connection is not basic for the given foliation");
    if (!check_connection(c)) throw std::invalid_argument("input fails the connection axioms");
    uint32_t n = b.n_total();

    // base foliation: generators with the fiber components dropped
    std::vector<VectorField> base_gens;
    for (const VectorField& z : fp.generators()) {
        VectorField bz(n);
        for (uint32_t i = 0; i < b.base_angles; ++i) {
            for (uint32_t w = b.base_angles; w < n; ++w)
                if (z.component(i).depends_on_axis(w))
                    throw std::invalid_argument("foliation is not projectable to the base");
            bz.set_component(i, z.component(i));
        }
        base_gens.push_back(std::move(bz));
    }
    Foliation base_f(std::move(base_gens), fp.rank());
    if (!check_transverse_metric(base_f, g_base))
        throw std::invalid_argument("base metric is not invariant for the base foliation");

    std::vector<Form> coframe = g_base.coframe();
    for (uint32_t l = 0; l < b.fiber_angles; ++l) coframe.push_back(c.omega().at(l, l));
    size_t nb = g_base.coframe().size();
    Matrix<Scalar> g(coframe.size(), coframe.size(), Scalar(n));
    for (size_t i = 0; i < nb; ++i)
        for (size_t j = 0; j < nb; ++j) g.at(i, j) = g_base.components().at(i, j);
    for (uint32_t l = 0; l < b.fiber_angles; ++l) g.at(nb + l, nb + l) = Scalar(n, 1);

    TransverseMetric out(std::move(coframe), std::move(g));
    if (!check_transverse_metric(fp, out))
        throw std::logic_error("constructed metric fails invariance");
    return out;
}

Connection reduce_connection(const Connection& c,
                             const std::vector<std::pair<Form, VectorField>>& frame) {
    uint32_t n = c.n_angles();
    for (size_t k = 0; k < frame.size(); ++k)
        for (size_t j = 0; j < frame.size(); ++j) {
            Form pairing = frame[k].first.interior(frame[j].second);
            Form want(n, Scalar(n, k == j ? 1 : 0));
            if (pairing != want)
                throw std::invalid_argument("frame is not dual: theta^" + std::to_string(k) +
                                            "(Y_" + std::to_string(j) + ") != delta");
        }
    Matrix<Form> out = c.omega();
    for (size_t r = 0; r < out.rows(); ++r)
        for (size_t cc = 0; cc < out.cols(); ++cc) {
            Form reduced = out.at(r, cc);
            for (const auto& [theta, y] : frame) {
                Form contracted = out.at(r, cc).interior(y);  // 0-form
                reduced -= theta * contracted.coefficient(0);
            }
            out.at(r, cc) = std::move(reduced);
        }
    return Connection(c.bundle(), std::move(out));
}

Form transgression_form(const Connection& c0, const Connection& c1, const Foliation& f) {
    if (!(c0.bundle() == c1.bundle())) throw std::invalid_argument("bundle mismatch");
    if (!c0.diagonal() || !c1.diagonal())
        throw std::invalid_argument("transgression needs commuting (diagonal) connections");
    if (check_basic_connection(c0, f) != BasicClass::Basic ||
        check_basic_connection(c1, f) != BasicClass::Basic)
        throw std::invalid_argument("transgression inputs must be basic connections");
    uint32_t n = c0.n_angles();
    Coeff t = Coeff::parameter("@t");
    uint32_t t_sym = intern_symbol("@t");

    size_t N = c0.omega().rows();
    Form total(n);
    for (size_t i = 0; i < N; ++i) {
        const Form& w0 = c0.omega().at(i, i);
        const Form& w1 = c1.omega().at(i, i);
        // omega_t = (1-t) w0 + t w1; diagonal case: R_t = d omega_t
        Form omega_t = w0 * (Coeff::one() - t) + w1 * t;
        Form rt = omega_t.d();
        Form integrand = wedge(-(w1 - w0), form_exponential_nilpotent(-rt));
        total += integrand;
    }
    return total.map_scalars([&](const Scalar& s) {
        return s.map_coefficients([&](const Coeff& c) { return c.integrate_unit_interval(t_sym); });
    });
}

}  // namespace torcal
