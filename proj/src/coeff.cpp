#include "torcal/coeff.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace torcal {

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

std::string ComplexRational::str() const {
    if (im_ == 0) return rational_str(re_);
    std::string ims = im_ == 1 ? "i" : im_ == -1 ? "-i" : rational_str(im_) + "*i";
    if (re_ == 0) return ims;
    if (im_ > 0) return rational_str(re_) + "+" + ims;
    return rational_str(re_) + "-" + (im_ == -1 ? "i" : rational_str(-im_) + "*i");
}

SymbolTable::SymbolTable() {
    names_.push_back("");  // id 0: the constant slot for global phases
    ids_[""] = 0;
}

SymbolTable& SymbolTable::instance() {
    static SymbolTable table;
    return table;
}

namespace {
std::mutex& symtab_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

uint32_t SymbolTable::intern(const std::string& name) {
    std::lock_guard<std::mutex> lock(symtab_mutex());
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(names_.size());
    names_.push_back(name);
    ids_[name] = id;
    return id;
}

const std::string& SymbolTable::name(uint32_t id) const {
    std::lock_guard<std::mutex> lock(symtab_mutex());
    return names_.at(id);
}

std::optional<uint32_t> SymbolTable::lookup(const std::string& name) const {
    std::lock_guard<std::mutex> lock(symtab_mutex());
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

uint32_t intern_symbol(const std::string& name) { return SymbolTable::instance().intern(name); }
const std::string& symbol_name(uint32_t id) { return SymbolTable::instance().name(id); }

bool monomial_less(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const Atom& x = a[i];
        const Atom& y = b[j];
        if (x.sym != y.sym || x.kind != y.kind) {
            // The factor present on one side only: the side with the earlier
            // key has a nonzero exponent there, the other side has zero.
            bool a_first = std::make_pair(x.sym, x.kind) < std::make_pair(y.sym, y.kind);
            const Atom& present = a_first ? x : y;
            bool present_positive = present.exp > 0;
            // exponent vectors compare entrywise: the one with the larger
            // exponent at the first differing key is larger
            bool a_larger = (a_first == present_positive);
            return !a_larger;
        }
        if (x.exp != y.exp) return x.exp < y.exp ? true : false;
        ++i, ++j;
    }
    if (i < a.size()) return a[i].exp < 0;
    if (j < b.size()) return b[j].exp > 0;
    return false;
}

namespace {

/// Canonicalize a raw atom list: merge duplicates, drop zero exponents,
/// reduce constant turn phases to Gaussian units. Returns the unit factor.
ComplexRational canonicalize(Monomial& m) {
    std::sort(m.begin(), m.end());
    Monomial out;
    ComplexRational unit(1);
    for (size_t i = 0; i < m.size();) {
        Atom a = m[i];
        size_t j = i + 1;
        while (j < m.size() && m[j].sym == a.sym && m[j].kind == a.kind) {
            a.exp += m[j].exp;
            ++j;
        }
        i = j;
        if (a.exp == 0) continue;
        if (a.kind == AtomKind::Power) {
            if (!is_integer(a.exp)) throw std::invalid_argument("fractional power of a parameter");
            if (a.exp < 0) throw std::invalid_argument("negative power of a parameter");
        }
        if (a.sym == 0) {
            if (a.kind == AtomKind::Power) throw std::invalid_argument("power of the constant slot");
            if (a.kind == AtomKind::PhaseTurn) {
                // exp(2*pi*i*q): fold quarters into 1, i, -1, -i
                Rational frac = a.exp - Rational(rational_floor(a.exp));
                Rational quarters = frac * 4;
                if (!is_integer(quarters))
                    throw std::invalid_argument("root of unity exp(2*pi*i*" + rational_str(frac) +
                                                ") is not representable (quarter turns only)");
                unit *= ComplexRational::unit_power(to_long(quarters));
                continue;
            }
            // PhaseRad with sym 0, exp(i*q): kept as an exp-atom
        }
        out.push_back(std::move(a));
    }
    m = std::move(out);
    return unit;
}

}  // namespace

Coeff::Coeff(long v) {
    if (v != 0) terms_[Monomial{}] = ComplexRational(v);
}

Coeff::Coeff(ComplexRational c) {
    if (!c.is_zero()) terms_[Monomial{}] = std::move(c);
}

Coeff Coeff::parameter(uint32_t sym) {
    if (sym == 0) throw std::invalid_argument("symbol id 0 is reserved");
    return term(Monomial{Atom{sym, AtomKind::Power, Rational(1)}}, ComplexRational(1));
}

Coeff Coeff::phase_rad(uint32_t sym, const Rational& q) {
    return term(Monomial{Atom{sym, AtomKind::PhaseRad, q}}, ComplexRational(1));
}

Coeff Coeff::phase_turn(uint32_t sym, const Rational& q) {
    return term(Monomial{Atom{sym, AtomKind::PhaseTurn, q}}, ComplexRational(1));
}

Coeff Coeff::term(Monomial m, ComplexRational c) {
    Coeff r;
    ComplexRational unit = canonicalize(m);
    c *= unit;
    if (!c.is_zero()) r.terms_[std::move(m)] = std::move(c);
    return r;
}

bool Coeff::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.empty();
}

ComplexRational Coeff::constant_value() const {
    if (terms_.empty()) return ComplexRational();
    if (!is_constant()) throw std::invalid_argument("coefficient is not a constant: " + str());
    return terms_.begin()->second;
}

void Coeff::insert(Monomial m, ComplexRational c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(std::move(m), std::move(c));
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Coeff Coeff::operator-() const {
    Coeff r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Coeff& Coeff::operator+=(const Coeff& o) {
    for (const auto& [m, c] : o.terms_) insert(m, c);
    return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
    for (const auto& [m, c] : o.terms_) insert(m, -c);
    return *this;
}

Coeff operator*(const Coeff& a, const Coeff& b) {
    Coeff r;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m;
            m.reserve(ma.size() + mb.size());
            m.insert(m.end(), ma.begin(), ma.end());
            m.insert(m.end(), mb.begin(), mb.end());
            ComplexRational unit = canonicalize(m);
            r.insert(std::move(m), ca * cb * unit);
        }
    }
    return r;
}

bool operator<(const Coeff& a, const Coeff& b) {
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (monomial_less(ia->first, ib->first)) return true;
        if (monomial_less(ib->first, ia->first)) return false;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms_.end() && ib != b.terms_.end();
}

std::pair<Monomial, ComplexRational> Coeff::leading() const {
    if (terms_.empty()) throw std::invalid_argument("leading term of zero");
    return *terms_.rbegin();
}

namespace {

// Division happens on a shifted integer-exponent image of the two operands:
// phase units get their exponents rescaled to integers and shifted to be
// nonnegative (the shifts cancel in the quotient), after which classic
// single-divisor lex division applies and terminates.
struct DenseKey {
    uint32_t sym;
    AtomKind kind;
    bool operator<(const DenseKey& o) const {
        if (sym != o.sym) return sym < o.sym;
        return kind < o.kind;
    }
    bool operator==(const DenseKey& o) const { return sym == o.sym && kind == o.kind; }
};

using DenseExp = std::vector<Integer>;

struct DensePoly {
    std::map<DenseExp, ComplexRational> terms;  // lex order on exponent vectors
};

bool dense_divides(const DenseExp& d, const DenseExp& m) {
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

}  // namespace

std::optional<Coeff> Coeff::exact_div(const Coeff& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero coefficient");
    if (is_zero()) return Coeff();
    if (d.is_constant()) {
        Coeff r;
        ComplexRational inv = ComplexRational(1) / d.constant_value();
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * inv);
        return r;
    }

    // per-key exponent denominators, plus each operand's own minimum: the
    // monomial content. Contents divide separately (min exponents add under
    // multiplication in a domain), so the dense division below only ever sees
    // content-free polynomials with nonnegative integer exponents.
    std::map<DenseKey, Integer> dens;
    std::map<DenseKey, Rational> min_f, min_g;
    auto scan = [&dens](const Coeff& p, std::map<DenseKey, Rational>& mins) {
        for (const auto& [m, c] : p.terms()) {
            std::map<DenseKey, Rational> exps;
            for (const Atom& a : m) {
                DenseKey k{a.sym, a.kind};
                exps[k] = a.exp;
                auto it = dens.find(k);
                if (it == dens.end())
                    dens.emplace(k, Integer(denominator(a.exp)));
                else
                    it->second = lcm(it->second, Integer(denominator(a.exp)));
            }
            if (&c == &p.terms().begin()->second) {
                mins = exps;
            } else {
                for (auto it = mins.begin(); it != mins.end();) {
                    auto found = exps.find(it->first);
                    if (found == exps.end()) {
                        if (it->second > 0) it->second = 0;
                        ++it;
                    } else {
                        if (found->second < it->second) it->second = found->second;
                        ++it;
                    }
                }
                for (const auto& [k, e] : exps)
                    if (!mins.count(k) && e < 0) mins[k] = e;
            }
        }
    };
    scan(*this, min_f);
    scan(d, min_g);

    // content quotient: must not drive a Power exponent negative
    std::map<DenseKey, Rational> content_q;
    {
        std::map<DenseKey, Rational> all;
        for (const auto& [k, e] : min_f) all[k] += e;
        for (const auto& [k, e] : min_g) all[k] -= e;
        for (const auto& [k, e] : all) {
            if (e == 0) continue;
            if (k.kind == AtomKind::Power && e < 0) return std::nullopt;
            content_q[k] = e;
        }
    }

    std::vector<DenseKey> key_list;
    for (const auto& [k, v] : dens) key_list.push_back(k);

    auto densify = [&](const Coeff& p, const std::map<DenseKey, Rational>& mins) {
        DensePoly out;
        for (const auto& [m, c] : p.terms()) {
            DenseExp e(key_list.size(), 0);
            size_t mi = 0;
            for (size_t ki = 0; ki < key_list.size(); ++ki) {
                Rational exp(0);
                while (mi < m.size() && DenseKey{m[mi].sym, m[mi].kind} < key_list[ki]) ++mi;
                if (mi < m.size() && DenseKey{m[mi].sym, m[mi].kind} == key_list[ki])
                    exp = m[mi++].exp;
                auto mn = mins.find(key_list[ki]);
                if (mn != mins.end()) exp -= mn->second;
                Rational scaled = exp * dens.at(key_list[ki]);
                e[ki] = numerator(scaled);  // integral by construction
            }
            out.terms.emplace(std::move(e), c);
        }
        return out;
    };

    DensePoly rem = densify(*this, min_f);
    DensePoly div = densify(d, min_g);
    const auto& [dlm, dlc] = *div.terms.rbegin();
    std::map<DenseExp, ComplexRational> quot;
    while (!rem.terms.empty()) {
        const auto& [rlm, rlc] = *rem.terms.rbegin();
        if (!dense_divides(dlm, rlm)) return std::nullopt;
        DenseExp qe(rlm.size());
        for (size_t i = 0; i < qe.size(); ++i) qe[i] = rlm[i] - dlm[i];
        ComplexRational qc = rlc / dlc;
        quot[qe] += qc;
        for (const auto& [dm, dc] : div.terms) {
            DenseExp pe(qe.size());
            for (size_t i = 0; i < pe.size(); ++i) pe[i] = qe[i] + dm[i];
            auto it = rem.terms.find(pe);
            ComplexRational nv = (it == rem.terms.end() ? ComplexRational() : it->second) - qc * dc;
            if (nv.is_zero()) {
                if (it != rem.terms.end()) rem.terms.erase(it);
            } else if (it == rem.terms.end()) {
                rem.terms.emplace(std::move(pe), std::move(nv));
            } else {
                it->second = std::move(nv);
            }
        }
    }

    // map back: unscale the exponents and reattach the content quotient
    Coeff result;
    for (const auto& [e, c] : quot) {
        std::map<DenseKey, Rational> exps(content_q);
        for (size_t ki = 0; ki < key_list.size(); ++ki) {
            if (e[ki] == 0) continue;
            exps[key_list[ki]] += Rational(e[ki]) / dens.at(key_list[ki]);
        }
        Monomial m;
        for (const auto& [k, exp] : exps) {
            if (exp == 0) continue;
            if (k.kind == AtomKind::Power && exp < 0) return std::nullopt;
            m.push_back(Atom{k.sym, k.kind, exp});
        }
        result += Coeff::term(std::move(m), c);
    }
    return result;
}

bool Coeff::depends_on(uint32_t sym) const {
    for (const auto& [m, c] : terms_)
        for (const Atom& a : m)
            if (a.sym == sym) return true;
    return false;
}

long Coeff::degree_in_power(uint32_t sym) const {
    long deg = 0;
    for (const auto& [m, c] : terms_)
        for (const Atom& a : m)
            if (a.sym == sym && a.kind == AtomKind::Power) deg = std::max(deg, to_long(a.exp));
    return deg;
}

Coeff Coeff::integrate_unit_interval(uint32_t sym) const {
    Coeff r;
    for (const auto& [m, c] : terms_) {
        Monomial out;
        Rational deg(0);
        for (const Atom& a : m) {
            if (a.sym == sym) {
                if (a.kind != AtomKind::Power)
                    throw std::invalid_argument("cannot integrate a phase factor in " + str());
                deg = a.exp;
            } else {
                out.push_back(a);
            }
        }
        r.insert(std::move(out), c / ComplexRational(deg + 1));
    }
    return r;
}

Coeff Coeff::exponential() const {
    Coeff r = Coeff::one();
    for (const auto& [m, c] : terms_) {
        if (c.re() != 0)
            throw std::invalid_argument("exponential of a non-imaginary coefficient: " + str());
        if (m.empty()) {
            r *= phase_rad(0, c.im());
            continue;
        }
        if (m.size() != 1 || m[0].kind != AtomKind::Power || m[0].exp != 1)
            throw std::invalid_argument("exponential not representable as an exp-atom: " + str());
        r *= phase_rad(m[0].sym, c.im());
    }
    return r;
}

Coeff Coeff::substitute(uint32_t sym, const Rational& value) const {
    Coeff r;
    for (const auto& [m, c] : terms_) {
        Monomial out;
        ComplexRational factor = c;
        for (const Atom& a : m) {
            if (a.sym != sym) {
                out.push_back(a);
                continue;
            }
            if (a.kind == AtomKind::Power) {
                long e = to_long(a.exp);
                for (long k = 0; k < e; ++k) factor *= ComplexRational(value);
            } else if (a.kind == AtomKind::PhaseRad) {
                out.push_back(Atom{0, AtomKind::PhaseRad, a.exp * value});
            } else {
                out.push_back(Atom{0, AtomKind::PhaseTurn, a.exp * value});
            }
        }
        ComplexRational unit = canonicalize(out);
        r.insert(std::move(out), factor * unit);
    }
    return r;
}

namespace {

std::string atom_str(const Atom& a) {
    std::ostringstream os;
    switch (a.kind) {
        case AtomKind::Power:
            os << symbol_name(a.sym);
            if (a.exp != 1) os << "^" << rational_str(a.exp);
            break;
        case AtomKind::PhaseRad:
            os << "exp(i";
            if (a.sym == 0) {
                os << "*" << rational_str(a.exp);
            } else {
                if (a.exp != 1) os << "*" << rational_str(a.exp);
                os << "*" << symbol_name(a.sym);
            }
            os << ")";
            break;
        case AtomKind::PhaseTurn:
            os << "exp(2*pi*i";
            if (a.sym == 0) {
                os << "*" << rational_str(a.exp);
            } else {
                if (a.exp != 1) os << "*" << rational_str(a.exp);
                os << "*" << symbol_name(a.sym);
            }
            os << ")";
            break;
    }
    return os.str();
}

}  // namespace

std::string Coeff::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string cs = c.str();
        if (!first) {
            if (!cs.empty() && cs[0] == '-' && cs.find('+', 1) == std::string::npos &&
                cs.find('-', 1) == std::string::npos) {
                os << " - ";
                cs = cs.substr(1);
            } else {
                os << " + ";
            }
        }
        first = false;
        bool need_parens = cs.find('+') != std::string::npos ||
                           (cs.find('-') != std::string::npos && cs.rfind('-') != 0);
        if (m.empty()) {
            os << (need_parens ? "(" + cs + ")" : cs);
            continue;
        }
        bool coeff_shown = !(cs == "1");
        if (cs == "-1") {
            os << "-";
            coeff_shown = false;
        } else if (coeff_shown) {
            os << (need_parens ? "(" + cs + ")" : cs) << "*";
        }
        bool firstm = true;
        for (const Atom& a : m) {
            if (!firstm) os << "*";
            firstm = false;
            os << atom_str(a);
        }
    }
    return os.str();
}

}  // namespace torcal
