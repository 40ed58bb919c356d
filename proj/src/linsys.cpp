#include "torcal/linsys.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <sstream>

namespace torcal {

namespace {

/// Monomial gcd of all terms of p (per-key minimum exponents; Power keys
/// clamp at zero so the quotient stays polynomial).
Monomial monomial_content(const Coeff& p) {
    bool first = true;
    std::map<std::pair<uint32_t, AtomKind>, Rational> mins;
    for (const auto& [m, c] : p.terms()) {
        std::map<std::pair<uint32_t, AtomKind>, Rational> exps;
        for (const Atom& a : m) exps[{a.sym, a.kind}] = a.exp;
        if (first) {
            mins = exps;
            first = false;
            continue;
        }
        for (auto it = mins.begin(); it != mins.end();) {
            auto f = exps.find(it->first);
            Rational e = f == exps.end() ? Rational(0) : f->second;
            if (e < it->second) it->second = e;
            ++it;
        }
        for (const auto& [k, e] : exps)
            if (!mins.count(k) && e < 0) mins[k] = e;
    }
    Monomial content;
    for (const auto& [k, e] : mins) {
        if (e == 0) continue;
        if (k.second == AtomKind::Power && e < 0) continue;
        content.push_back(Atom{k.first, k.second, e});
    }
    return content;
}

/// If p is univariate (single Power symbol, no phases), return the symbol.
std::optional<uint32_t> univariate_symbol(const Coeff& p) {
    std::optional<uint32_t> sym;
    for (const auto& [m, c] : p.terms()) {
        for (const Atom& a : m) {
            if (a.kind != AtomKind::Power) return std::nullopt;
            if (sym && *sym != a.sym) return std::nullopt;
            sym = a.sym;
        }
    }
    return sym;
}

using DensePoly1 = std::vector<ComplexRational>;

DensePoly1 to_dense(const Coeff& p, uint32_t sym) {
    DensePoly1 d(static_cast<size_t>(p.degree_in_power(sym)) + 1);
    for (const auto& [m, c] : p.terms()) {
        long e = m.empty() ? 0 : to_long(m[0].exp);
        d[m.empty() ? 0 : static_cast<size_t>(e)] += c;
    }
    return d;
}

Coeff from_dense(const DensePoly1& d, uint32_t sym) {
    Coeff p;
    for (size_t e = 0; e < d.size(); ++e) {
        if (d[e].is_zero()) continue;
        Monomial m;
        if (e > 0) m.push_back(Atom{sym, AtomKind::Power, Rational(static_cast<long>(e))});
        p += Coeff::term(std::move(m), d[e]);
    }
    return p;
}

void dense_trim(DensePoly1& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

DensePoly1 dense_rem(DensePoly1 a, const DensePoly1& b) {
    dense_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        ComplexRational q = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        dense_trim(a);
    }
    return a;
}

DensePoly1 dense_gcd(DensePoly1 a, DensePoly1 b) {
    dense_trim(a);
    dense_trim(b);
    while (!b.empty()) {
        DensePoly1 r = dense_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {  // monic
        ComplexRational lead = a.back();
        for (auto& c : a) c = c / lead;
    }
    return a;
}

}  // namespace

CoeffFrac::CoeffFrac(Coeff num, Coeff den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    reduce();
}

void CoeffFrac::reduce() {
    if (num_.is_zero()) {
        den_ = Coeff::one();
        return;
    }
    if (den_.is_one()) return;
    if (!den_.is_constant()) {
        // strip shared monomial content
        Monomial cn = monomial_content(num_);
        Monomial cd = monomial_content(den_);
        if (!cn.empty() || !cd.empty()) {
            std::map<std::pair<uint32_t, AtomKind>, Rational> shared;
            std::map<std::pair<uint32_t, AtomKind>, Rational> n_exps, d_exps;
            for (const Atom& a : cn) n_exps[{a.sym, a.kind}] = a.exp;
            for (const Atom& a : cd) d_exps[{a.sym, a.kind}] = a.exp;
            Monomial g;
            for (const auto& [k, e] : n_exps) {
                if (k.second != AtomKind::Power) continue;  // phases handled via den units below
                auto f = d_exps.find(k);
                if (f == d_exps.end()) continue;
                Rational m = std::min(e, f->second);
                if (m > 0) g.push_back(Atom{k.first, k.second, m});
            }
            if (!g.empty()) {
                Coeff gm = Coeff::term(g, ComplexRational(1));
                num_ = *num_.exact_div(gm);
                den_ = *den_.exact_div(gm);
            }
        }
        // phase units in the denominator content are invertible: move them up
        Monomial cu;
        for (const Atom& a : monomial_content(den_))
            if (a.kind != AtomKind::Power) cu.push_back(a);
        if (!cu.empty()) {
            Coeff um = Coeff::term(cu, ComplexRational(1));
            den_ = *den_.exact_div(um);
            Monomial inv;
            for (Atom a : cu) {
                a.exp = -a.exp;
                inv.push_back(a);
            }
            num_ = num_ * Coeff::term(inv, ComplexRational(1));
        }
    }
    if (den_.is_constant()) {
        num_ = *num_.exact_div(den_);
        den_ = Coeff::one();
        return;
    }
    if (auto q = num_.exact_div(den_)) {
        num_ = std::move(*q);
        den_ = Coeff::one();
        return;
    }
    // univariate gcd reduction (covers the single-parameter solves)
    auto sn = univariate_symbol(num_);
    auto sd = univariate_symbol(den_);
    if (sn && sd && (*sn == *sd || num_.is_constant() || den_.is_constant())) {
        uint32_t sym = num_.is_constant() ? *sd : *sn;
        DensePoly1 g = dense_gcd(to_dense(num_, sym), to_dense(den_, sym));
        if (g.size() > 1) {
            Coeff gc = from_dense(g, sym);
            num_ = *num_.exact_div(gc);
            den_ = *den_.exact_div(gc);
        }
    }
    // canonical: make the denominator's leading coefficient 1
    auto [lm, lc] = den_.leading();
    if (!lc.is_one()) {
        Coeff scale{ComplexRational(1) / lc};
        num_ = num_ * scale;
        den_ = den_ * scale;
    }
}

CoeffFrac CoeffFrac::operator-() const {
    CoeffFrac r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

CoeffFrac operator+(const CoeffFrac& a, const CoeffFrac& b) {
    if (a.den_.is_one() && b.den_.is_one()) {
        CoeffFrac r;
        r.num_ = a.num_ + b.num_;
        return r;
    }
    if (a.den_ == b.den_) return CoeffFrac(a.num_ + b.num_, a.den_);
    return CoeffFrac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

CoeffFrac operator-(const CoeffFrac& a, const CoeffFrac& b) { return a + (-b); }

CoeffFrac operator*(const CoeffFrac& a, const CoeffFrac& b) {
    if (a.den_.is_one() && b.den_.is_one()) {
        CoeffFrac r;
        r.num_ = a.num_ * b.num_;
        return r;
    }
    return CoeffFrac(a.num_ * b.num_, a.den_ * b.den_);
}

CoeffFrac operator/(const CoeffFrac& a, const CoeffFrac& b) {
    if (b.is_zero()) throw std::domain_error("division by zero fraction");
    return CoeffFrac(a.num_ * b.den_, a.den_ * b.num_);
}

Coeff CoeffFrac::as_coeff() const {
    if (den_.is_one()) return num_;
    auto q = num_.exact_div(den_);
    if (!q) throw std::domain_error("solution entry is not polynomial in the parameters: " + str());
    return *q;
}

std::string CoeffFrac::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

Coeff UnknownPool::fresh(const std::string& hint) {
    static std::atomic<uint64_t> counter{0};
    uint64_t id = counter.fetch_add(1);
    std::string name = "@u" + std::to_string(id);
    if (!hint.empty()) name += "_" + hint;
    uint32_t sym = intern_symbol(name);
    syms_.insert(sym);
    order_.push_back(sym);
    return Coeff::parameter(sym);
}

std::string RowKey::str() const {
    std::ostringstream os;
    os << family << " @ (";
    for (size_t i = 0; i < mode.size(); ++i) {
        if (i) os << ",";
        os << mode[i];
    }
    os << ")";
    return os.str();
}

void LinearSystem::add_scalar_equation(const std::string& family, const Scalar& expr) {
    for (const auto& [mode, coeff] : expr.terms()) {
        if (mode_limit_ >= 0) {
            bool beyond = false;
            for (long m : mode)
                if (m > mode_limit_ || m < -mode_limit_) beyond = true;
            if (beyond) continue;
        }
        RowKey key{family, mode};
        Row row;
        for (const auto& [mono, c] : coeff.terms()) {
            // split the monomial into its unknown atom and known remainder
            uint32_t unknown = 0;
            Monomial rest;
            for (const Atom& a : mono) {
                if (pool_->contains(a.sym)) {
                    if (a.kind != AtomKind::Power || a.exp != 1 || unknown != 0)
                        throw std::logic_error("constraint is not linear in the unknowns");
                    unknown = a.sym;
                } else {
                    rest.push_back(a);
                }
            }
            Coeff value = Coeff::term(std::move(rest), c);
            if (unknown == 0)
                row.rhs -= value;
            else
                row.cols[unknown] += value;
        }
        for (auto it = row.cols.begin(); it != row.cols.end();)
            it = it->second.is_zero() ? row.cols.erase(it) : std::next(it);
        if (row.cols.empty() && row.rhs.is_zero()) continue;
        auto [slot, inserted] = rows_.emplace(std::move(key), std::move(row));
        if (!inserted) throw std::logic_error("duplicate equation key " + slot->first.str());
    }
}

void LinearSystem::add_form_equation(const std::string& family, const Form& expr) {
    for (const auto& [mask, scalar] : expr.terms()) {
        std::ostringstream fam;
        fam << family << "[";
        for (uint32_t i : mask_indices(mask)) fam << i;
        fam << "]";
        add_scalar_equation(fam.str(), scalar);
    }
}

size_t LinearSystem::column_count() const {
    std::set<uint32_t> cols;
    for (const auto& [k, r] : rows_)
        for (const auto& [c, v] : r.cols) cols.insert(c);
    return cols.size();
}

namespace {

struct WorkRow {
    std::map<uint32_t, CoeffFrac> cols;
    CoeffFrac rhs;
    std::map<size_t, CoeffFrac> hist;  // combination of original rows
};

struct Component {
    std::vector<size_t> row_ids;
};

/// Union-find over columns; rows join the components of their columns.
std::vector<Component> split_components(const std::vector<std::map<uint32_t, Coeff>>& rowcols) {
    std::map<uint32_t, uint32_t> parent;
    std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](uint32_t a, uint32_t b) {
        if (!parent.count(a)) parent[a] = a;
        if (!parent.count(b)) parent[b] = b;
        parent[find(a)] = find(b);
    };
    for (const auto& cols : rowcols) {
        if (cols.empty()) continue;
        uint32_t first = cols.begin()->first;
        if (!parent.count(first)) parent[first] = first;
        for (const auto& [c, v] : cols) unite(first, c);
    }
    std::map<uint32_t, size_t> comp_of_root;
    std::vector<Component> comps;
    // rows with no columns (pure "0 = rhs") each form their own component
    for (size_t r = 0; r < rowcols.size(); ++r) {
        if (rowcols[r].empty()) {
            comps.push_back(Component{{r}});
            continue;
        }
        uint32_t root = find(rowcols[r].begin()->first);
        auto it = comp_of_root.find(root);
        if (it == comp_of_root.end()) {
            comp_of_root.emplace(root, comps.size());
            comps.push_back(Component{{r}});
        } else {
            comps[it->second].row_ids.push_back(r);
        }
    }
    return comps;
}

/// Gaussian elimination over the fraction field on one component.
/// Rows are modified in place; returns pivots as (row id, column).
std::vector<std::pair<size_t, uint32_t>> eliminate(std::vector<WorkRow>& rows,
                                                   const std::vector<size_t>& ids,
                                                   bool with_history) {
    std::vector<std::pair<size_t, uint32_t>> pivots;
    std::set<size_t> remaining(ids.begin(), ids.end());
    while (true) {
        // pick the sparsest remaining row with a nonempty support,
        // preferring constant pivot entries
        size_t best_row = SIZE_MAX;
        size_t best_sz = SIZE_MAX;
        for (size_t r : remaining) {
            size_t sz = rows[r].cols.size();
            if (sz == 0) continue;
            if (sz < best_sz) {
                best_sz = sz;
                best_row = r;
            }
        }
        if (best_row == SIZE_MAX) break;
        uint32_t pivot_col = 0;
        bool found = false;
        for (const auto& [c, v] : rows[best_row].cols) {
            if (v.is_integral() && v.num().is_constant()) {
                pivot_col = c;
                found = true;
                break;
            }
        }
        if (!found) pivot_col = rows[best_row].cols.begin()->first;
        remaining.erase(best_row);
        pivots.emplace_back(best_row, pivot_col);
        const CoeffFrac pivot = rows[best_row].cols.at(pivot_col);
        for (size_t r : remaining) {
            auto hit = rows[r].cols.find(pivot_col);
            if (hit == rows[r].cols.end()) continue;
            CoeffFrac factor = hit->second / pivot;
            rows[r].cols.erase(hit);
            for (const auto& [c, v] : rows[best_row].cols) {
                if (c == pivot_col) continue;
                auto it = rows[r].cols.find(c);
                CoeffFrac nv = (it == rows[r].cols.end() ? CoeffFrac() : it->second) - factor * v;
                if (nv.is_zero()) {
                    if (it != rows[r].cols.end()) rows[r].cols.erase(it);
                } else if (it == rows[r].cols.end()) {
                    rows[r].cols.emplace(c, std::move(nv));
                } else {
                    it->second = std::move(nv);
                }
            }
            rows[r].rhs = rows[r].rhs - factor * rows[best_row].rhs;
            if (!with_history) continue;
            for (const auto& [h, v] : rows[best_row].hist) {
                auto it = rows[r].hist.find(h);
                CoeffFrac nv = (it == rows[r].hist.end() ? CoeffFrac() : it->second) - factor * v;
                if (nv.is_zero()) {
                    if (it != rows[r].hist.end()) rows[r].hist.erase(it);
                } else if (it == rows[r].hist.end()) {
                    rows[r].hist.emplace(h, std::move(nv));
                } else {
                    it->second = std::move(nv);
                }
            }
        }
    }
    return pivots;
}

}  // namespace

SolveResult LinearSystem::solve() const {
    std::vector<const RowKey*> keys;
    std::vector<const Row*> originals;
    std::vector<WorkRow> rows;
    std::vector<std::map<uint32_t, Coeff>> rowcols;
    for (const auto& [key, row] : rows_) {
        WorkRow w;
        for (const auto& [c, v] : row.cols) w.cols.emplace(c, CoeffFrac(v));
        w.rhs = CoeffFrac(row.rhs);
        keys.push_back(&key);
        originals.push_back(&row);
        rows.push_back(std::move(w));
        rowcols.push_back(row.cols);
    }

    SolveResult result;
    for (const Component& comp : split_components(rowcols)) {
        std::vector<std::pair<size_t, uint32_t>> pivots = eliminate(rows, comp.row_ids, false);
        // inconsistency: empty support with nonzero rhs
        bool inconsistent = false;
        for (size_t r : comp.row_ids)
            if (rows[r].cols.empty() && !rows[r].rhs.is_zero()) inconsistent = true;
        if (inconsistent) {
            // rerun just this component with history tracking to extract the
            // Farkas combination
            for (size_t r : comp.row_ids) {
                WorkRow w;
                for (const auto& [c, v] : originals[r]->cols) w.cols.emplace(c, CoeffFrac(v));
                w.rhs = CoeffFrac(originals[r]->rhs);
                w.hist.clear();
                w.hist.emplace(r, CoeffFrac(Coeff::one()));
                rows[r] = std::move(w);
            }
            eliminate(rows, comp.row_ids, true);
            for (size_t r : comp.row_ids) {
                if (rows[r].cols.empty() && !rows[r].rhs.is_zero()) {
                    // scale by the rhs denominator so the combination's
                    // value is a plain ring element
                    result.status = SolveStatus::Infeasible;
                    CoeffFrac scale{rows[r].rhs.den()};
                    for (const auto& [h, v] : rows[r].hist)
                        result.certificate.push_back(CertTerm{*keys[h], v * scale});
                    result.certificate_rhs = rows[r].rhs.num();
                    return result;
                }
            }
            throw std::logic_error("inconsistency vanished on the history rerun");
        }
        // back substitution, free columns set to zero
        std::map<uint32_t, CoeffFrac> values;
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            auto [r, c] = *it;
            CoeffFrac acc = rows[r].rhs;
            for (const auto& [col, v] : rows[r].cols) {
                if (col == c) continue;
                auto vv = values.find(col);
                if (vv != values.end()) acc = acc - v * vv->second;
            }
            values[c] = acc / rows[r].cols.at(c);
        }
        for (const auto& [c, v] : values) {
            if (v.is_zero()) continue;
            result.solution[c] = v.as_coeff();
        }
    }
    return result;
}

size_t LinearSystem::rank() const {
    std::vector<WorkRow> rows;
    std::vector<std::map<uint32_t, Coeff>> rowcols;
    for (const auto& [key, row] : rows_) {
        WorkRow w;
        for (const auto& [c, v] : row.cols) w.cols.emplace(c, CoeffFrac(v));
        rows.push_back(std::move(w));
        rowcols.push_back(row.cols);
    }
    size_t rank = 0;
    for (const Component& comp : split_components(rowcols))
        rank += eliminate(rows, comp.row_ids, false).size();
    return rank;
}

bool LinearSystem::combination_vanishes(const std::vector<CertTerm>& cert) const {
    std::map<uint32_t, CoeffFrac> sums;
    for (const CertTerm& term : cert) {
        auto it = rows_.find(term.row);
        if (it == rows_.end()) throw std::invalid_argument("certificate row missing: " + term.row.str());
        for (const auto& [c, v] : it->second.cols) {
            auto slot = sums.find(c);
            CoeffFrac nv = (slot == sums.end() ? CoeffFrac() : slot->second) + term.mult * CoeffFrac(v);
            if (slot == sums.end())
                sums.emplace(c, std::move(nv));
            else
                slot->second = std::move(nv);
        }
    }
    for (const auto& [c, v] : sums)
        if (!v.is_zero()) return false;
    return true;
}

CoeffFrac LinearSystem::combination_rhs(const std::vector<CertTerm>& cert) const {
    CoeffFrac sum;
    for (const CertTerm& term : cert) {
        auto it = rows_.find(term.row);
        if (it == rows_.end()) throw std::invalid_argument("certificate row missing: " + term.row.str());
        sum = sum + term.mult * CoeffFrac(it->second.rhs);
    }
    return sum;
}

Scalar unknown_scalar(UnknownPool& pool, uint32_t n, long cutoff) {
    Scalar s(n);
    Freq k(n, -cutoff);
    while (true) {
        s += Scalar::exponential(n, k, pool.fresh());
        size_t axis = 0;
        while (axis < n && ++k[axis] > cutoff) k[axis++] = -cutoff;
        if (axis == n) break;
    }
    return s;
}

Scalar substitute_solution(const Scalar& tmpl, const std::map<uint32_t, Coeff>& solution,
                           const UnknownPool& pool) {
    Scalar out(tmpl.n_angles());
    for (const auto& [k, c] : tmpl.terms()) {
        Coeff value;
        for (const auto& [mono, cr] : c.terms()) {
            uint32_t unknown = 0;
            Monomial rest;
            for (const Atom& a : mono) {
                if (pool.contains(a.sym))
                    unknown = a.sym;
                else
                    rest.push_back(a);
            }
            if (unknown == 0) {
                value += Coeff::term(rest, cr);
                continue;
            }
            auto it = solution.find(unknown);
            if (it == solution.end()) continue;  // free variable fixed to zero
            value += Coeff::term(rest, cr) * it->second;
        }
        out += Scalar::exponential(out.n_angles(), k, value);
    }
    return out;
}

size_t rational_rank(std::vector<std::vector<Rational>> m) {
    size_t rank = 0;
    size_t rows = m.size();
    if (rows == 0) return 0;
    size_t cols = m[0].size();
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t pivot = SIZE_MAX;
        for (size_t r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot == SIZE_MAX) continue;
        std::swap(m[rank], m[pivot]);
        for (size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace torcal
