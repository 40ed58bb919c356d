#include "torcal/cartan.hpp"

namespace torcal {

namespace {

Matrix<Form> zero_matrix(uint32_t n, size_t dim) { return Matrix<Form>(dim, dim, Form(n)); }

}  // namespace

EquivForm::EquivForm(std::vector<uint32_t> dual_syms, uint32_t n_angles, size_t matrix_dim)
    : duals_(std::move(dual_syms)), n_(n_angles), dim_(matrix_dim) {}

EquivForm EquivForm::from_form(std::vector<uint32_t> dual_syms, Form f) {
    EquivForm e(std::move(dual_syms), f.n_angles(), 1);
    e.insert(std::vector<long>(e.duals_.size(), 0), Matrix<Form>(1, 1, std::move(f)));
    return e;
}

EquivForm EquivForm::from_matrix(std::vector<uint32_t> dual_syms, Matrix<Form> m) {
    if (m.rows() == 0 || m.rows() != m.cols()) throw std::invalid_argument("square matrix required");
    uint32_t n = m.at(0, 0).n_angles();
    EquivForm e(std::move(dual_syms), n, m.rows());
    e.insert(std::vector<long>(e.duals_.size(), 0), std::move(m));
    return e;
}

EquivForm EquivForm::dual_var(std::vector<uint32_t> dual_syms, uint32_t n_angles, size_t index,
                              size_t matrix_dim) {
    EquivForm e(std::move(dual_syms), n_angles, matrix_dim);
    if (index >= e.duals_.size()) throw std::invalid_argument("dual variable index out of range");
    std::vector<long> exps(e.duals_.size(), 0);
    exps[index] = 1;
    Matrix<Form> one(matrix_dim, matrix_dim, Form(n_angles));
    for (size_t i = 0; i < matrix_dim; ++i) one.at(i, i) = Form(n_angles, Scalar(n_angles, 1));
    e.insert(std::move(exps), std::move(one));
    return e;
}

Matrix<Form> EquivForm::coefficient(const std::vector<long>& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? zero_matrix(n_, dim_) : it->second;
}

void EquivForm::set_coefficient(std::vector<long> exps, Matrix<Form> coeff) {
    if (exps.size() != duals_.size()) throw std::invalid_argument("exponent arity mismatch");
    if (matrix_is_zero(coeff))
        terms_.erase(exps);
    else
        terms_[std::move(exps)] = std::move(coeff);
}

void EquivForm::insert(std::vector<long> exps, Matrix<Form> m) {
    if (matrix_is_zero(m)) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(std::move(exps), std::move(m));
        return;
    }
    it->second = it->second + m;
    if (matrix_is_zero(it->second)) terms_.erase(it);
}

int EquivForm::max_grading() const {
    int g = 0;
    for (const auto& [e, m] : terms_) {
        long poly = 0;
        for (long x : e) poly += x;
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t c = 0; c < m.cols(); ++c)
                g = std::max(g, static_cast<int>(2 * poly) + m.at(r, c).max_degree());
    }
    return g;
}

EquivForm EquivForm::grading_component(int grading) const {
    EquivForm out(duals_, n_, dim_);
    for (const auto& [e, m] : terms_) {
        long poly = 0;
        for (long x : e) poly += x;
        int want = grading - static_cast<int>(2 * poly);
        if (want < 0) continue;
        Matrix<Form> part = m.map([&](const Form& f) { return f.degree_component(want); });
        out.insert(e, std::move(part));
    }
    return out;
}

EquivForm EquivForm::truncate_dual_degree(long max_degree) const {
    EquivForm out(duals_, n_, dim_);
    for (const auto& [e, m] : terms_) {
        long poly = 0;
        for (long x : e) poly += x;
        if (poly <= max_degree) out.insert(e, m);
    }
    return out;
}

EquivForm EquivForm::operator-() const {
    EquivForm out(duals_, n_, dim_);
    for (const auto& [e, m] : terms_) out.terms_.emplace(e, m.map([](const Form& f) { return -f; }));
    return out;
}

EquivForm& EquivForm::operator+=(const EquivForm& o) {
    if (duals_ != o.duals_ || n_ != o.n_ || dim_ != o.dim_)
        throw std::invalid_argument("equivariant form shape mismatch");
    for (const auto& [e, m] : o.terms_) insert(e, m);
    return *this;
}

EquivForm& EquivForm::operator-=(const EquivForm& o) { return *this += -o; }

EquivForm operator*(const EquivForm& a, const EquivForm& b) {
    if (a.duals_ != b.duals_ || a.n_ != b.n_ || a.dim_ != b.dim_)
        throw std::invalid_argument("equivariant form shape mismatch");
    EquivForm out(a.duals_, a.n_, a.dim_);
    for (const auto& [ea, ma] : a.terms_) {
        for (const auto& [eb, mb] : b.terms_) {
            std::vector<long> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.insert(std::move(e), matrix_wedge(ma, mb));
        }
    }
    return out;
}

EquivForm EquivForm::operator*(const Coeff& c) const {
    EquivForm out(duals_, n_, dim_);
    for (const auto& [e, m] : terms_) out.insert(e, m.map([&](const Form& f) { return f * c; }));
    return out;
}

EquivForm EquivForm::d() const {
    EquivForm out(duals_, n_, dim_);
    for (const auto& [e, m] : terms_) out.insert(e, matrix_d(m));
    return out;
}

EquivForm EquivForm::interior(const VectorField& v) const {
    EquivForm out(duals_, n_, dim_);
    for (const auto& [e, m] : terms_) out.insert(e, matrix_interior(m, v));
    return out;
}

EquivForm EquivForm::lie(const VectorField& v) const {
    EquivForm out(duals_, n_, dim_);
    for (const auto& [e, m] : terms_) out.insert(e, matrix_lie(m, v));
    return out;
}

Matrix<Form> EquivForm::substitute_duals(const std::vector<Form>& values) const {
    if (values.size() != duals_.size()) throw std::invalid_argument("substitution arity mismatch");
    Matrix<Form> out = zero_matrix(n_, dim_);
    for (const auto& [e, m] : terms_) {
        Form factor(n_, Scalar(n_, 1));
        for (size_t j = 0; j < values.size(); ++j)
            for (long p = 0; p < e[j]; ++p) factor = wedge(factor, values[j]);
        out = out + m.map([&](const Form& f) { return wedge(factor, f); });
    }
    return out;
}

Matrix<Form> EquivForm::evaluate_duals(const std::vector<Rational>& values) const {
    if (values.size() != duals_.size()) throw std::invalid_argument("evaluation arity mismatch");
    Matrix<Form> out = zero_matrix(n_, dim_);
    for (const auto& [e, m] : terms_) {
        Rational factor(1);
        for (size_t j = 0; j < values.size(); ++j)
            for (long p = 0; p < e[j]; ++p) factor *= values[j];
        if (factor == 0) continue;
        Coeff c{ComplexRational(factor)};
        out = out + m.map([&](const Form& f) { return f * c; });
    }
    return out;
}

EquivForm equivariant_d(const EquivForm& a, const std::vector<VectorField>& actions) {
    if (actions.size() != a.dual_syms().size())
        throw std::invalid_argument("one action field per dual variable required");
    EquivForm out = a.d();
    for (size_t j = 0; j < actions.size(); ++j) {
        EquivForm contracted = a.interior(actions[j]);
        for (const auto& [e, m] : contracted.terms()) {
            std::vector<long> shifted = e;
            ++shifted[j];
            EquivForm piece(a.dual_syms(), a.n_angles(), a.matrix_dim());
            piece.set_coefficient(std::move(shifted), m);
            out -= piece;
        }
    }
    return out;
}

bool is_invariant(const EquivForm& a, const std::vector<VectorField>& actions) {
    for (const VectorField& y : actions)
        if (!a.lie(y).is_zero()) return false;
    return true;
}

EquivariantBundleData::EquivariantBundleData(Connection connection,
                                             std::vector<std::pair<uint32_t, VectorField>> actions)
    : conn_(std::move(connection)), actions_(std::move(actions)) {
    uint32_t n = conn_.n_angles();
    for (const auto& [sym, y] : actions_) {
        if (y.n_angles() != n) throw std::invalid_argument("action field dimension mismatch");
        if (!matrix_is_zero(matrix_lie(conn_.omega(), y)))
            throw std::invalid_argument("connection is not invariant under the action field " +
                                        symbol_name(sym));
        for (uint32_t w = 0; w < conn_.bundle().fiber_angles; ++w) {
            VectorField fw = VectorField::coordinate(n, conn_.bundle().fiber_axis(w));
            if (!bracket(y, fw).is_zero())
                throw std::invalid_argument("action field does not commute with fiber translations");
        }
    }
    for (size_t a = 0; a < actions_.size(); ++a)
        for (size_t b = a + 1; b < actions_.size(); ++b)
            if (!bracket(actions_[a].second, actions_[b].second).is_zero())
                throw std::invalid_argument("action fields must commute (abelian case)");
}

std::vector<uint32_t> EquivariantBundleData::dual_syms() const {
    std::vector<uint32_t> out;
    for (const auto& [sym, y] : actions_) out.push_back(sym);
    return out;
}

std::vector<VectorField> EquivariantBundleData::action_fields() const {
    std::vector<VectorField> out;
    for (const auto& [sym, y] : actions_) out.push_back(y);
    return out;
}

std::vector<Matrix<Scalar>> moment(const EquivariantBundleData& data) {
    std::vector<Matrix<Scalar>> out;
    for (const auto& [sym, y] : data.actions()) {
        Matrix<Form> contracted = matrix_interior(data.connection().omega(), y);
        out.push_back(contracted.map([](const Form& f) { return -f.coefficient(0); }));
    }
    return out;
}

EquivForm equivariant_curvature(const EquivariantBundleData& data) {
    uint32_t n = data.connection().n_angles();
    size_t dim = data.connection().bundle().rank();
    EquivForm out = EquivForm::from_matrix(data.dual_syms(), curvature(data.connection()));
    std::vector<Matrix<Scalar>> mu = moment(data);
    for (size_t j = 0; j < mu.size(); ++j) {
        std::vector<long> exps(mu.size(), 0);
        exps[j] = 1;
        Matrix<Form> coeff = mu[j].map([&](const Scalar& s) { return Form(n, s); });
        EquivForm piece(data.dual_syms(), n, dim);
        piece.set_coefficient(std::move(exps), std::move(coeff));
        out += piece;
    }
    return out;
}

EquivForm equivariant_bianchi_defect(const EquivariantBundleData& data) {
    EquivForm req = equivariant_curvature(data);
    EquivForm nabla = equivariant_d(req, data.action_fields());
    // graded commutator with the connection 1-form: [omega, R+mu]
    const Matrix<Form>& omega = data.connection().omega();
    EquivForm comm(req.dual_syms(), req.n_angles(), req.matrix_dim());
    for (const auto& [e, m] : req.terms()) {
        Matrix<Form> c = matrix_wedge(omega, m) - matrix_wedge(m, omega);
        EquivForm piece(req.dual_syms(), req.n_angles(), req.matrix_dim());
        piece.set_coefficient(e, std::move(c));
        comm += piece;
    }
    return nabla + comm;
}

Form chern_character(const Connection& c) {
    if (!c.diagonal())
        throw std::invalid_argument("chern character needs commuting (diagonal) curvature");
    Matrix<Form> r = curvature(c);
    uint32_t n = c.n_angles();
    Form out(n);
    for (size_t i = 0; i < r.rows(); ++i) out += form_exponential_nilpotent(-r.at(i, i));
    return out;
}

Form equivariant_chern_character(const EquivariantBundleData& data,
                                 const std::vector<Rational>& eval_at) {
    const Connection& c = data.connection();
    if (!c.diagonal())
        throw std::invalid_argument("equivariant chern character needs diagonal curvature");
    if (eval_at.size() != data.actions().size())
        throw std::invalid_argument("evaluation arity mismatch");
    uint32_t n = c.n_angles();
    Matrix<Form> r = curvature(c);
    std::vector<Matrix<Scalar>> mu = moment(data);
    Form out(n);
    for (size_t i = 0; i < r.rows(); ++i) {
        Scalar mu_eval(n);
        for (size_t j = 0; j < mu.size(); ++j)
            mu_eval += mu[j].at(i, i) * Coeff(ComplexRational(eval_at[j]));
        if (!mu_eval.is_constant())
            throw std::invalid_argument(
                "moment entry is not constant; the exponential has no exact exp-atom form");
        Coeff phase = (-mu_eval.constant_term()).exponential();
        out += form_exponential_nilpotent(-r.at(i, i)) * phase;
    }
    return out;
}

EquivForm equivariant_chern_character_formal(const EquivariantBundleData& data, long truncation) {
    const Connection& c = data.connection();
    if (!c.diagonal())
        throw std::invalid_argument("equivariant chern character needs diagonal curvature");
    if (truncation < 0) throw std::invalid_argument("truncation order must be nonnegative");
    EquivForm req = equivariant_curvature(data);
    uint32_t n = c.n_angles();
    size_t dim = c.bundle().rank();

    Matrix<Form> eye(dim, dim, Form(n));
    for (size_t i = 0; i < dim; ++i) eye.at(i, i) = Form(n, Scalar(n, 1));
    EquivForm sum = EquivForm::from_matrix(data.dual_syms(), eye);
    EquivForm power = sum;
    Rational factorial(1);
    long maxp = truncation + static_cast<long>(n) / 2 + 1;
    for (long p = 1; p <= maxp; ++p) {
        power = (power * req).truncate_dual_degree(truncation);
        if (power.is_zero()) break;
        factorial *= p;
        Rational scale = (p % 2 == 0 ? Rational(1) : Rational(-1)) / factorial;
        sum += power * Coeff(ComplexRational(scale));
    }
    // trace
    EquivForm out(data.dual_syms(), n, 1);
    for (const auto& [e, m] : sum.terms()) {
        Form tr(n);
        for (size_t i = 0; i < dim; ++i) tr += m.at(i, i);
        EquivForm piece(data.dual_syms(), n, 1);
        piece.set_coefficient(e, Matrix<Form>(1, 1, std::move(tr)));
        out += piece;
    }
    return out;
}

Form horizontal_projection(const Form& a, const std::vector<std::pair<Form, VectorField>>& frame) {
    for (size_t j = 0; j < frame.size(); ++j)
        for (size_t k = 0; k < frame.size(); ++k) {
            Form pairing = frame[j].first.interior(frame[k].second);
            Form want(a.n_angles(), Scalar(a.n_angles(), j == k ? 1 : 0));
            if (pairing != want) throw std::invalid_argument("frame is not dual");
        }
    Form out = a;
    for (const auto& [theta, x] : frame) out -= wedge(theta, out.interior(x));
    return out;
}

EquivForm horizontal_projection(const EquivForm& a,
                                const std::vector<std::pair<Form, VectorField>>& frame) {
    EquivForm out(a.dual_syms(), a.n_angles(), a.matrix_dim());
    for (const auto& [e, m] : a.terms()) {
        Matrix<Form> pm = m.map([&](const Form& f) { return horizontal_projection(f, frame); });
        out.set_coefficient(e, std::move(pm));
    }
    return out;
}

Form chern_weil(const EquivForm& a, const std::vector<std::pair<Form, VectorField>>& frame,
                const std::vector<Form>& curvatures) {
    if (a.matrix_dim() != 1) throw std::invalid_argument("chern-weil acts on scalar Cartan elements");
    for (const Form& th : curvatures)
        if (!th.is_zero() && !th.is_homogeneous(2))
            throw std::invalid_argument("curvature components must be 2-forms");
    Matrix<Form> substituted = a.substitute_duals(curvatures);
    return horizontal_projection(substituted.at(0, 0), frame);
}

}  // namespace torcal
