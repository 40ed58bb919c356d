#include "torcal/exterior.hpp"

#include <bit>

namespace torcal {

int mask_degree(WedgeMask m) { return std::popcount(m); }

std::vector<uint32_t> mask_indices(WedgeMask m) {
    std::vector<uint32_t> idx;
    for (uint32_t i = 0; m; ++i, m >>= 1)
        if (m & 1) idx.push_back(i);
    return idx;
}

/// Sign of merging two disjoint sorted index sets; 0 if they intersect.
int wedge_sign(WedgeMask a, WedgeMask b) {
    if (a & b) return 0;
    // count inversions: for each bit of b, the bits of a above it
    int inversions = 0;
    for (uint32_t i = 0; b >> i; ++i) {
        if ((b >> i) & 1) inversions += std::popcount(a >> (i + 1));
    }
    return inversions % 2 == 0 ? 1 : -1;
}

Form::Form(uint32_t n_angles, Scalar function) : n_(n_angles) {
    if (function.n_angles() != n_) throw std::invalid_argument("torus dimension mismatch");
    if (!function.is_zero()) terms_.emplace(0u, std::move(function));
}

Form Form::d_angle(uint32_t n_angles, uint32_t axis) {
    if (axis >= n_angles) throw std::invalid_argument("angle index out of range");
    return monomial(n_angles, WedgeMask(1) << axis, Scalar(n_angles, 1));
}

Form Form::monomial(uint32_t n_angles, WedgeMask mask, Scalar coeff) {
    if (mask >> n_angles) throw std::invalid_argument("wedge monomial out of range");
    if (coeff.n_angles() != n_angles) throw std::invalid_argument("torus dimension mismatch");
    Form f(n_angles);
    if (!coeff.is_zero()) f.terms_.emplace(mask, std::move(coeff));
    return f;
}

Scalar Form::coefficient(WedgeMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Scalar(n_) : it->second;
}

bool Form::is_homogeneous(int degree) const {
    for (const auto& [m, s] : terms_)
        if (mask_degree(m) != degree) return false;
    return true;
}

int Form::max_degree() const {
    int d = 0;
    for (const auto& [m, s] : terms_) d = std::max(d, mask_degree(m));
    return d;
}

long Form::bandwidth() const {
    long b = 0;
    for (const auto& [m, s] : terms_) b = std::max(b, s.bandwidth());
    return b;
}

Form Form::degree_component(int degree) const {
    Form f(n_);
    for (const auto& [m, s] : terms_)
        if (mask_degree(m) == degree) f.terms_.emplace(m, s);
    return f;
}

void Form::insert(WedgeMask m, Scalar s) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!s.is_zero()) terms_.emplace(m, std::move(s));
        return;
    }
    it->second += s;
    if (it->second.is_zero()) terms_.erase(it);
}

Form Form::operator-() const {
    Form f(n_);
    for (const auto& [m, s] : terms_) f.terms_.emplace(m, -s);
    return f;
}

Form& Form::operator+=(const Form& o) {
    if (n_ != o.n_) throw std::invalid_argument("torus dimension mismatch");
    for (const auto& [m, s] : o.terms_) insert(m, s);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    if (n_ != o.n_) throw std::invalid_argument("torus dimension mismatch");
    for (const auto& [m, s] : o.terms_) insert(m, -s);
    return *this;
}

Form Form::operator*(const Scalar& s) const {
    Form f(n_);
    for (const auto& [m, c] : terms_) f.insert(m, c * s);
    return f;
}

Form Form::operator*(const Coeff& c) const {
    Form f(n_);
    for (const auto& [m, s] : terms_) f.insert(m, s * c);
    return f;
}

Form wedge(const Form& a, const Form& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("torus dimension mismatch");
    Form f(a.n_);
    for (const auto& [ma, sa] : a.terms_) {
        for (const auto& [mb, sb] : b.terms_) {
            int sign = wedge_sign(ma, mb);
            if (sign == 0) continue;
            Scalar c = sa * sb;
            if (sign < 0) c = -c;
            f.insert(ma | mb, std::move(c));
        }
    }
    return f;
}

Form Form::d() const {
    Form f(n_);
    for (const auto& [m, s] : terms_) {
        for (uint32_t i = 0; i < n_; ++i) {
            WedgeMask di = WedgeMask(1) << i;
            int sign = wedge_sign(di, m);
            if (sign == 0) continue;
            Scalar c = s.partial_derivative(i);
            if (c.is_zero()) continue;
            if (sign < 0) c = -c;
            f.insert(di | m, std::move(c));
        }
    }
    return f;
}

Form Form::interior(const VectorField& v) const {
    if (n_ != v.n_angles()) throw std::invalid_argument("torus dimension mismatch");
    Form f(n_);
    for (const auto& [m, s] : terms_) {
        // i(v)(dt_{i1}^...^dt_{ik}) = sum_j (-1)^{j-1} v^{ij} (monomial without ij)
        auto idx = mask_indices(m);
        for (size_t j = 0; j < idx.size(); ++j) {
            const Scalar& comp = v.component(idx[j]);
            if (comp.is_zero()) continue;
            Scalar c = s * comp;
            if (j % 2 == 1) c = -c;
            f.insert(m & ~(WedgeMask(1) << idx[j]), std::move(c));
        }
    }
    return f;
}

Form Form::lie(const VectorField& v) const { return interior(v).d() + d().interior(v); }

Form Form::pullback(const AffineMap& map) const {
    if (map.n_angles() != n_) throw std::invalid_argument("affine map dimension mismatch");
    const auto& A = map.lin();
    // dtheta_j pulls back to sum_i A[j][i] dtheta_i
    std::vector<Form> dpull(n_, Form(n_));
    for (uint32_t j = 0; j < n_; ++j) {
        Form fj(n_);
        for (uint32_t i = 0; i < n_; ++i)
            if (A[j][i] != 0)
                fj += Form::monomial(n_, WedgeMask(1) << i, Scalar(n_, A[j][i]));
        dpull[j] = std::move(fj);
    }
    Form out(n_);
    for (const auto& [m, s] : terms_) {
        Form piece(n_, s.pullback(map));
        for (uint32_t i : mask_indices(m)) piece.wedge_by(dpull[i]);
        out += piece;
    }
    return out;
}

Form Form::map_scalars(const std::function<Scalar(const Scalar&)>& f) const {
    Form out(n_);
    for (const auto& [m, s] : terms_) out.insert(m, f(s));
    return out;
}

VectorField::VectorField(std::vector<Scalar> comps)
    : n_(static_cast<uint32_t>(comps.size())), comps_(std::move(comps)) {
    for (const Scalar& s : comps_)
        if (s.n_angles() != n_) throw std::invalid_argument("component dimension mismatch");
}

VectorField VectorField::coordinate(uint32_t n_angles, uint32_t axis) {
    VectorField v(n_angles);
    v.set_component(axis, Scalar(n_angles, 1));
    return v;
}

void VectorField::set_component(uint32_t i, Scalar s) {
    if (s.n_angles() != n_) throw std::invalid_argument("torus dimension mismatch");
    comps_.at(i) = std::move(s);
}

bool VectorField::is_zero() const {
    for (const Scalar& s : comps_)
        if (!s.is_zero()) return false;
    return true;
}

long VectorField::bandwidth() const {
    long b = 0;
    for (const Scalar& s : comps_) b = std::max(b, s.bandwidth());
    return b;
}

bool VectorField::is_constant() const {
    for (const Scalar& s : comps_)
        if (!s.is_constant()) return false;
    return true;
}

VectorField VectorField::operator-() const {
    VectorField v(n_);
    for (uint32_t i = 0; i < n_; ++i) v.comps_[i] = -comps_[i];
    return v;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    if (n_ != o.n_) throw std::invalid_argument("torus dimension mismatch");
    for (uint32_t i = 0; i < n_; ++i) comps_[i] += o.comps_[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    if (n_ != o.n_) throw std::invalid_argument("torus dimension mismatch");
    for (uint32_t i = 0; i < n_; ++i) comps_[i] -= o.comps_[i];
    return *this;
}

VectorField VectorField::operator*(const Scalar& s) const {
    VectorField v(n_);
    for (uint32_t i = 0; i < n_; ++i) v.comps_[i] = comps_[i] * s;
    return v;
}

Scalar VectorField::apply(const Scalar& f) const {
    if (f.n_angles() != n_) throw std::invalid_argument("torus dimension mismatch");
    Scalar r(n_);
    for (uint32_t i = 0; i < n_; ++i) {
        if (comps_[i].is_zero()) continue;
        r += comps_[i] * f.partial_derivative(i);
    }
    return r;
}

VectorField bracket(const VectorField& v, const VectorField& w) {
    if (v.n_ != w.n_) throw std::invalid_argument("torus dimension mismatch");
    VectorField r(v.n_);
    for (uint32_t i = 0; i < v.n_; ++i) r.comps_[i] = v.apply(w.comps_[i]) - w.apply(v.comps_[i]);
    return r;
}

}  // namespace torcal
