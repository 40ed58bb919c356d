#include "torcal/foliation.hpp"

#include <sstream>

namespace torcal {

namespace {

/// Evaluate a Scalar at a quarter-angle grid point (angles = quarter turns);
/// exact because every exponential folds into a Gaussian unit.
Coeff evaluate_quarters(const Scalar& s, const std::vector<long>& quarters) {
    Coeff out;
    for (const auto& [k, c] : s.terms()) {
        Rational turn(0);
        for (size_t i = 0; i < k.size(); ++i) turn += Rational(k[i] * quarters[i], 4);
        out += c * Coeff::phase_turn(0, turn);
    }
    return out;
}

size_t coeff_matrix_rank(std::vector<std::vector<Coeff>> m) {
    size_t rank = 0;
    if (m.empty()) return 0;
    size_t cols = m[0].size();
    std::vector<std::vector<CoeffFrac>> w(m.size(), std::vector<CoeffFrac>(cols));
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < cols; ++c) w[r][c] = CoeffFrac(m[r][c]);
    for (size_t c = 0; c < cols && rank < w.size(); ++c) {
        size_t pivot = SIZE_MAX;
        for (size_t r = rank; r < w.size(); ++r)
            if (!w[r][c].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot == SIZE_MAX) continue;
        std::swap(w[rank], w[pivot]);
        for (size_t r = rank + 1; r < w.size(); ++r) {
            if (w[r][c].is_zero()) continue;
            CoeffFrac f = w[r][c] / w[rank][c];
            for (size_t cc = c; cc < cols; ++cc) w[r][cc] = w[r][cc] - f * w[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

Foliation::Foliation(std::vector<VectorField> generators, size_t declared_rank)
    : generators_(std::move(generators)) {
    if (generators_.empty()) throw std::invalid_argument("foliation needs at least one generator");
    n_ = generators_[0].n_angles();
    for (const VectorField& g : generators_)
        if (g.n_angles() != n_) throw std::invalid_argument("generator dimension mismatch");
    if (declared_rank != generators_.size())
        throw std::invalid_argument("declared rank does not match the generator count");
    if (generators_.size() > n_) throw std::invalid_argument("more generators than dimensions");

    // exact independence of the constant parts
    {
        std::vector<std::vector<Coeff>> m;
        for (const VectorField& g : generators_) {
            std::vector<Coeff> row;
            for (uint32_t i = 0; i < n_; ++i) row.push_back(g.component(i).constant_term());
            m.push_back(std::move(row));
        }
        bool all_constant = all_generators_constant();
        size_t r = coeff_matrix_rank(std::move(m));
        if (all_constant && r != generators_.size())
            throw std::invalid_argument("generators are linearly dependent");
    }

    // pointwise independence on the quarter grid
    std::vector<long> quarters(n_, 0);
    while (true) {
        std::vector<std::vector<Coeff>> m;
        for (const VectorField& g : generators_) {
            std::vector<Coeff> row;
            for (uint32_t i = 0; i < n_; ++i) row.push_back(evaluate_quarters(g.component(i), quarters));
            m.push_back(std::move(row));
        }
        if (coeff_matrix_rank(std::move(m)) != generators_.size()) {
            std::ostringstream os;
            os << "generators drop rank at the grid point (";
            for (uint32_t i = 0; i < n_; ++i) os << (i ? "," : "") << quarters[i] << "/4";
            os << ")";
            throw std::invalid_argument(os.str());
        }
        size_t axis = 0;
        while (axis < n_ && ++quarters[axis] == 4) quarters[axis++] = 0;
        if (axis == n_) break;
    }
}

long Foliation::bandwidth() const {
    long b = 0;
    for (const VectorField& g : generators_) b = std::max(b, g.bandwidth());
    return b;
}

bool Foliation::all_generators_constant() const {
    for (const VectorField& g : generators_)
        if (!g.is_constant()) return false;
    return true;
}

namespace {

struct SpanSystem {
    UnknownPool pool;
    LinearSystem sys;
    std::vector<Scalar> coeff_templates;
    SpanSystem() : sys(pool) {}
};

std::unique_ptr<SpanSystem> build_span_system(const std::vector<VectorField>& gens,
                                              const VectorField& target, long cutoff,
                                              long mode_limit = -1) {
    auto out = std::make_unique<SpanSystem>();
    uint32_t n = target.n_angles();
    std::vector<Scalar> cs;
    for (size_t i = 0; i < gens.size(); ++i)
        cs.push_back(unknown_scalar(out->pool, n, cutoff));
    out->sys = LinearSystem(out->pool);
    out->sys.limit_equation_modes(mode_limit);
    for (uint32_t comp = 0; comp < n; ++comp) {
        Scalar expr = -target.component(comp);
        for (size_t i = 0; i < gens.size(); ++i) expr += cs[i] * gens[i].component(comp);
        out->sys.add_scalar_equation("span.c" + std::to_string(comp), expr);
    }
    out->coeff_templates = std::move(cs);
    return out;
}

}  // namespace

SpanResult span_solve(const std::vector<VectorField>& gens, const VectorField& target, long cutoff) {
    long bw = target.bandwidth();
    for (const VectorField& g : gens) bw = std::max(bw, g.bandwidth());
    if (cutoff < bw)
        throw std::invalid_argument("cutoff " + std::to_string(cutoff) +
                                    " below the data bandwidth " + std::to_string(bw));

    auto s1 = build_span_system(gens, target, cutoff);
    SolveResult res = s1->sys.solve();
    SpanResult out;
    if (res.status == SolveStatus::Feasible) {
        out.status = SpanStatus::InSpan;
        for (const Scalar& tmpl : s1->coeff_templates)
            out.coefficients.push_back(substitute_solution(tmpl, res.solution, s1->pool));
        return out;
    }
    // hunt a genuine certificate at increasing mode levels: equations at
    // modes <= level with unknowns of bandwidth level + bw see their full
    // column sets, so a Farkas combination there rules out coefficients of
    // every bandwidth (hence smooth ones)
    long bw1 = std::max(bw, 1L);
    for (long level = bw1; level <= cutoff + bw1; ++level) {
        auto s2 = build_span_system(gens, target, level + bw1, level);
        SolveResult res2 = s2->sys.solve();
        if (res2.status != SolveStatus::Infeasible) continue;
        out.status = SpanStatus::NotInSpan;
        out.certificate = std::move(res2.certificate);
        out.certificate_rhs = std::move(res2.certificate_rhs);
        return out;
    }
    out.status = SpanStatus::CutoffInsufficient;
    return out;
}

InvolutivityResult check_involutive(const Foliation& f, long cutoff) {
    InvolutivityResult out;
    const auto& gens = f.generators();
    for (size_t a = 0; a < gens.size(); ++a) {
        for (size_t b = a + 1; b < gens.size(); ++b) {
            VectorField br = bracket(gens[a], gens[b]);
            SpanResult span = span_solve(gens, br, cutoff);
            switch (span.status) {
                case SpanStatus::InSpan:
                    out.bracket_coefficients.push_back(std::move(span.coefficients));
                    break;
                case SpanStatus::NotInSpan:
                    out.status = SpanStatus::NotInSpan;
                    out.offending_a = a;
                    out.offending_b = b;
                    out.offending_bracket = std::move(br);
                    out.certificate = std::move(span.certificate);
                    return out;
                case SpanStatus::CutoffInsufficient:
                    out.status = SpanStatus::CutoffInsufficient;
                    out.offending_a = a;
                    out.offending_b = b;
                    out.offending_bracket = std::move(br);
                    return out;
            }
        }
    }
    out.status = SpanStatus::InSpan;
    return out;
}

bool is_basic_form(const Foliation& f, const Form& a) {
    if (a.n_angles() != f.n_angles()) throw std::invalid_argument("torus dimension mismatch");
    Form da = a.d();
    for (const VectorField& z : f.generators())
        if (!a.interior(z).is_zero() || !da.interior(z).is_zero()) return false;
    return true;
}

VectorField bott_derivative(const Foliation& f, const VectorField& z, const VectorField& s,
                            long cutoff) {
    SpanResult tangent = span_solve(f.generators(), z, cutoff);
    if (tangent.status != SpanStatus::InSpan)
        throw std::invalid_argument("derivative direction is not tangent to the foliation");
    return bracket(z, s);
}

SpanStatus normal_equal(const Foliation& f, const VectorField& v, const VectorField& w, long cutoff) {
    return span_solve(f.generators(), v - w, cutoff).status;
}

size_t closure_rank(const Foliation& f) {
    if (!f.all_generators_constant())
        throw std::invalid_argument("closure rank needs constant generators");
    uint32_t n = f.n_angles();
    // rows of the rational matrix: one per (generator, parameter monomial,
    // re/im); the annihilator lattice is its rational kernel
    std::vector<std::vector<Rational>> rows;
    for (const VectorField& g : f.generators()) {
        std::map<Monomial, std::pair<std::vector<Rational>, std::vector<Rational>>, MonomialLess> per_mono;
        for (uint32_t i = 0; i < n; ++i) {
            Coeff ct = g.component(i).constant_term();
            for (const auto& [mono, c] : ct.terms()) {
                auto& slot = per_mono[mono];
                if (slot.first.empty()) {
                    slot.first.assign(n, Rational(0));
                    slot.second.assign(n, Rational(0));
                }
                slot.first[i] = c.re();
                slot.second[i] = c.im();
            }
        }
        for (auto& [mono, v] : per_mono) {
            rows.push_back(std::move(v.first));
            rows.push_back(std::move(v.second));
        }
    }
    return rational_rank(std::move(rows));
}

std::vector<size_t> basic_cohomology_dims(const Foliation& f, long cutoff) {
    if (cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
    uint32_t n = f.n_angles();
    long modes = 1;
    for (uint32_t i = 0; i < n; ++i) modes *= 2 * cutoff + 1;

    // per degree: rank of the basic constraints B, and of B stacked with d
    std::vector<size_t> rank_b(n + 2, 0), rank_bd(n + 2, 0);
    std::vector<size_t> dim_v(n + 2, 0);
    for (uint32_t k = 0; k <= n; ++k) {
        UnknownPool pool;
        Form a(n);
        for (WedgeMask mask = 0; mask < (WedgeMask(1) << n); ++mask) {
            if (mask_degree(mask) != static_cast<int>(k)) continue;
            a += Form::monomial(n, mask, unknown_scalar(pool, n, cutoff));
        }
        dim_v[k] = pool.size();
        LinearSystem basic(pool);
        Form da = a.d();
        for (size_t g = 0; g < f.generators().size(); ++g) {
            const VectorField& z = f.generators()[g];
            basic.add_form_equation("iZ" + std::to_string(g), a.interior(z));
            basic.add_form_equation("iZd" + std::to_string(g), da.interior(z));
        }
        rank_b[k] = basic.rank();
        basic.add_form_equation("d", da);
        rank_bd[k] = basic.rank();
    }

    std::vector<size_t> dims(n + 1, 0);
    for (uint32_t k = 0; k <= n; ++k) {
        size_t kernel = dim_v[k] - rank_bd[k];
        size_t image = k == 0 ? 0 : rank_bd[k - 1] - rank_b[k - 1];
        dims[k] = kernel - image;
    }
    return dims;
}

TransverseMetric::TransverseMetric(std::vector<Form> coframe, Matrix<Scalar> g)
    : coframe_(std::move(coframe)), g_(std::move(g)) {
    if (coframe_.empty()) throw std::invalid_argument("empty coframe");
    n_ = coframe_[0].n_angles();
    for (const Form& e : coframe_) {
        if (e.n_angles() != n_) throw std::invalid_argument("coframe dimension mismatch");
        if (!e.is_homogeneous(1)) throw std::invalid_argument("coframe entries must be 1-forms");
    }
    if (g_.rows() != coframe_.size() || g_.cols() != coframe_.size())
        throw std::invalid_argument("metric matrix shape does not match the coframe");
    for (size_t a = 0; a < g_.rows(); ++a)
        for (size_t b = 0; b < a; ++b)
            if (g_.at(a, b) != g_.at(b, a)) throw std::invalid_argument("metric matrix must be symmetric");
}

Matrix<Scalar> TransverseMetric::coordinate_tensor() const {
    Matrix<Scalar> t(n_, n_, Scalar(n_));
    for (size_t a = 0; a < coframe_.size(); ++a) {
        for (size_t b = 0; b < coframe_.size(); ++b) {
            if (g_.at(a, b).is_zero()) continue;
            for (uint32_t i = 0; i < n_; ++i) {
                Scalar ea = coframe_[a].coefficient(WedgeMask(1) << i);
                if (ea.is_zero()) continue;
                for (uint32_t j = 0; j < n_; ++j) {
                    Scalar eb = coframe_[b].coefficient(WedgeMask(1) << j);
                    if (eb.is_zero()) continue;
                    t.at(i, j) += g_.at(a, b) * ea * eb;
                }
            }
        }
    }
    return t;
}

bool check_transverse_metric(const Foliation& f, const TransverseMetric& g) {
    if (f.n_angles() != g.n_angles()) throw std::invalid_argument("torus dimension mismatch");
    for (const VectorField& z : f.generators())
        for (const Form& e : g.coframe())
            if (!e.interior(z).is_zero())
                throw std::invalid_argument("coframe does not annihilate the foliation");

    uint32_t n = f.n_angles();
    Matrix<Scalar> t = g.coordinate_tensor();
    for (const VectorField& z : f.generators()) {
        // L_Z(T_ij dt_i x dt_j) = Z(T_ij) dt_i x dt_j + T_ij (L_Z dt_i) x dt_j
        //                       + T_ij dt_i x (L_Z dt_j), with L_Z dt_i = d(Z^i)
        Matrix<Scalar> lz(n, n, Scalar(n));
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) lz.at(i, j) = z.apply(t.at(i, j));
        for (uint32_t i = 0; i < n; ++i) {
            Form dzi = Form(n, z.component(i)).d();
            for (const auto& [mask, coeff] : dzi.terms()) {
                uint32_t k = mask_indices(mask)[0];
                for (uint32_t j = 0; j < n; ++j) {
                    lz.at(k, j) += t.at(i, j) * coeff;
                    lz.at(j, k) += t.at(j, i) * coeff;
                }
            }
        }
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j)
                if (!lz.at(i, j).is_zero()) return false;
    }
    return true;
}

}  // namespace torcal
