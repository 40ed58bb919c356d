#include "torcal/scalar.hpp"

#include <sstream>

namespace torcal {

Scalar::Scalar(uint32_t n_angles, Coeff constant) : n_(n_angles) {
    if (!constant.is_zero()) terms_.emplace(Freq(n_, 0), std::move(constant));
}

Scalar Scalar::exponential(uint32_t n_angles, Freq k, Coeff c) {
    if (k.size() != n_angles) throw std::invalid_argument("frequency size mismatch");
    Scalar s(n_angles);
    if (!c.is_zero()) s.terms_.emplace(std::move(k), std::move(c));
    return s;
}

Scalar Scalar::cosine(uint32_t n_angles, uint32_t axis, long freq) {
    Freq k(n_angles, 0);
    k[axis] = freq;
    Freq mk(n_angles, 0);
    mk[axis] = -freq;
    Coeff half{ComplexRational(Rational(1, 2))};
    return exponential(n_angles, k, half) + exponential(n_angles, mk, half);
}

Scalar Scalar::sine(uint32_t n_angles, uint32_t axis, long freq) {
    Freq k(n_angles, 0);
    k[axis] = freq;
    Freq mk(n_angles, 0);
    mk[axis] = -freq;
    // sin = (e^{ik} - e^{-ik}) / 2i
    Coeff c{ComplexRational(Rational(0), Rational(-1, 2))};
    return exponential(n_angles, k, c) + exponential(n_angles, mk, -c);
}

Scalar Scalar::parameter(uint32_t n_angles, const std::string& name) {
    return Scalar(n_angles, Coeff::parameter(name));
}

void Scalar::set_term(Freq k, Coeff c) {
    if (k.size() != n_) throw std::invalid_argument("frequency size mismatch");
    if (c.is_zero())
        terms_.erase(k);
    else
        terms_[std::move(k)] = std::move(c);
}

Coeff Scalar::term(const Freq& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Coeff() : it->second;
}

bool Scalar::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Freq(n_, 0);
}

Coeff Scalar::constant_term() const {
    auto it = terms_.find(Freq(n_, 0));
    return it == terms_.end() ? Coeff() : it->second;
}

long Scalar::bandwidth() const {
    long b = 0;
    for (const auto& [k, c] : terms_)
        for (long ki : k) b = std::max(b, ki < 0 ? -ki : ki);
    return b;
}

bool Scalar::depends_on_axis(uint32_t axis) const {
    for (const auto& [k, c] : terms_)
        if (k[axis] != 0) return true;
    return false;
}

void Scalar::insert(Freq k, Coeff c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(std::move(k), std::move(c));
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Scalar::check_same(const Scalar& o) const {
    if (n_ != o.n_) throw std::invalid_argument("torus dimension mismatch");
}

Scalar Scalar::operator-() const {
    Scalar r(n_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) insert(k, c);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) insert(k, -c);
    return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    Scalar r(a.n_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            Freq k(a.n_);
            for (uint32_t i = 0; i < a.n_; ++i) k[i] = ka[i] + kb[i];
            r.insert(std::move(k), ca * cb);
        }
    }
    return r;
}

Scalar Scalar::operator*(const Coeff& c) const {
    Scalar r(n_);
    if (c.is_zero()) return r;
    for (const auto& [k, tc] : terms_) r.insert(k, tc * c);
    return r;
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms_.end() && ib != b.terms_.end();
}

Scalar Scalar::partial_derivative(uint32_t axis) const {
    if (axis >= n_) throw std::invalid_argument("derivative axis out of range");
    Scalar r(n_);
    for (const auto& [k, c] : terms_) {
        if (k[axis] == 0) continue;
        r.terms_.emplace(k, c * Coeff(ComplexRational(Rational(0), Rational(k[axis]))));
    }
    return r;
}

Scalar Scalar::fiber_mean(const std::set<uint32_t>& axes) const {
    for (uint32_t a : axes)
        if (a >= n_) throw std::invalid_argument("mean axis out of range");
    Scalar r(n_);
    for (const auto& [k, c] : terms_) {
        bool keep = true;
        for (uint32_t a : axes)
            if (k[a] != 0) {
                keep = false;
                break;
            }
        if (keep) r.terms_.emplace(k, c);
    }
    return r;
}

Scalar Scalar::pullback(const AffineMap& map) const {
    if (map.n_angles() != n_) throw std::invalid_argument("affine map dimension mismatch");
    Scalar r(n_);
    const auto& A = map.lin();
    const auto& t = map.translation();
    for (const auto& [k, c] : terms_) {
        // exp(i k.(A theta + t)) = phase(k.t) exp(i (A^T k).theta)
        Freq kk(n_, 0);
        for (uint32_t j = 0; j < n_; ++j)
            for (uint32_t i = 0; i < n_; ++i) kk[i] += k[j] * A[j][i];
        AngleExpr kt;
        for (uint32_t j = 0; j < n_; ++j)
            if (k[j] != 0) kt += t[j] * Rational(k[j]);
        r.insert(std::move(kk), c * kt.phase(1));
    }
    return r;
}

Scalar Scalar::map_coefficients(const std::function<Coeff(const Coeff&)>& f) const {
    Scalar r(n_);
    for (const auto& [k, c] : terms_) r.insert(k, f(c));
    return r;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool is_const_freq = true;
        for (long ki : k)
            if (ki != 0) is_const_freq = false;
        std::string cs = c.str();
        bool simple = c.term_count() <= 1;
        if (is_const_freq) {
            os << (simple ? cs : "(" + cs + ")");
            continue;
        }
        if (cs == "1") {
        } else if (cs == "-1") {
            os << "-";
        } else {
            os << (simple ? cs : "(" + cs + ")") << "*";
        }
        os << "exp(i*(";
        bool firstk = true;
        for (uint32_t i = 0; i < n_; ++i) {
            if (k[i] == 0) continue;
            if (!firstk && k[i] > 0) os << "+";
            if (k[i] == -1)
                os << "-";
            else if (k[i] != 1)
                os << k[i] << "*";
            os << "t" << i;
            firstk = false;
        }
        os << "))";
    }
    return os.str();
}

AngleExpr AngleExpr::parameter_rads(uint32_t sym, Rational scale) {
    AngleExpr e;
    e.rad_par[sym] = std::move(scale);
    return e;
}

AngleExpr AngleExpr::parameter_turns(uint32_t sym, Rational scale) {
    AngleExpr e;
    e.turn_par[sym] = std::move(scale);
    return e;
}

AngleExpr& AngleExpr::operator+=(const AngleExpr& o) {
    rads += o.rads;
    turns += o.turns;
    for (const auto& [s, q] : o.rad_par) {
        rad_par[s] += q;
        if (rad_par[s] == 0) rad_par.erase(s);
    }
    for (const auto& [s, q] : o.turn_par) {
        turn_par[s] += q;
        if (turn_par[s] == 0) turn_par.erase(s);
    }
    return *this;
}

AngleExpr AngleExpr::operator*(const Rational& s) const {
    AngleExpr e;
    if (s == 0) return e;
    e.rads = rads * s;
    e.turns = turns * s;
    for (const auto& [sym, q] : rad_par) e.rad_par[sym] = q * s;
    for (const auto& [sym, q] : turn_par) e.turn_par[sym] = q * s;
    return e;
}

Coeff AngleExpr::phase(long k) const {
    Coeff r = Coeff::one();
    Rational kk(k);
    if (rads != 0) r *= Coeff::phase_rad(0, rads * kk);
    if (turns != 0) r *= Coeff::phase_turn(0, turns * kk);
    for (const auto& [sym, q] : rad_par) r *= Coeff::phase_rad(sym, q * kk);
    for (const auto& [sym, q] : turn_par) r *= Coeff::phase_turn(sym, q * kk);
    return r;
}

bool AngleExpr::is_zero() const {
    return rads == 0 && turns == 0 && rad_par.empty() && turn_par.empty();
}

void AngleExpr::normalize_turns() {
    turns -= Rational(rational_floor(turns));
}

std::string AngleExpr::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const std::string& part) {
        if (!first) os << " + ";
        os << part;
        first = false;
    };
    if (turns != 0) emit("2*pi*" + rational_str(turns));
    for (const auto& [sym, q] : turn_par)
        emit("2*pi*" + (q == 1 ? "" : rational_str(q) + "*") + symbol_name(sym));
    if (rads != 0) emit(rational_str(rads));
    for (const auto& [sym, q] : rad_par)
        emit((q == 1 ? "" : rational_str(q) + "*") + symbol_name(sym));
    return os.str();
}

AffineMap::AffineMap(std::vector<std::vector<long>> lin, std::vector<AngleExpr> translation)
    : lin_(std::move(lin)), trans_(std::move(translation)) {
    size_t n = lin_.size();
    for (const auto& row : lin_)
        if (row.size() != n) throw std::invalid_argument("affine map matrix must be square");
    if (trans_.size() != n) throw std::invalid_argument("translation size mismatch");
}

AffineMap AffineMap::identity(uint32_t n) {
    std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
    for (uint32_t i = 0; i < n; ++i) a[i][i] = 1;
    return AffineMap(std::move(a), std::vector<AngleExpr>(n));
}

AffineMap AffineMap::translation(uint32_t n, std::vector<AngleExpr> t) {
    AffineMap m = identity(n);
    if (t.size() != n) throw std::invalid_argument("translation size mismatch");
    m.trans_ = std::move(t);
    return m;
}

AffineMap AffineMap::rotation(uint32_t n, uint32_t axis, AngleExpr by) {
    std::vector<AngleExpr> t(n);
    t.at(axis) = std::move(by);
    return translation(n, std::move(t));
}

AffineMap AffineMap::compose(const AffineMap& o) const {
    if (n_angles() != o.n_angles()) throw std::invalid_argument("affine map dimension mismatch");
    uint32_t n = n_angles();
    // (this . o)(x) = A_this (A_o x + t_o) + t_this
    std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            for (uint32_t k = 0; k < n; ++k) a[i][j] += lin_[i][k] * o.lin_[k][j];
    std::vector<AngleExpr> t(n);
    for (uint32_t i = 0; i < n; ++i) {
        t[i] = trans_[i];
        for (uint32_t k = 0; k < n; ++k)
            if (lin_[i][k] != 0) t[i] += o.trans_[k] * Rational(lin_[i][k]);
    }
    return AffineMap(std::move(a), std::move(t));
}

}  // namespace torcal
