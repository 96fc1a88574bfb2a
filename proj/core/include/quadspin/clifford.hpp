#ifndef QUADSPIN_CLIFFORD_HPP
#define QUADSPIN_CLIFFORD_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include "quadspin/quadspace.hpp"

namespace quadspin {

// ===========================================================================
// The Clifford algebra Cl(q) on the exterior algebra ΛV, with the deformed
// product v·ξ = v∧ξ + v⌟ξ. Basis monomials e_S are subsets of {0..2n-1}
// stored as bitmasks. The contraction convention is
//     v ⌟ (w ∧ ξ) = pairing(v,w)·ξ − w ∧ (v ⌟ ξ),
// which gives v·v = q(v)·1 and uv + vu = 2·pairing(u,v)·1. Every scalar
// downstream (Lemma compositions in particular) is normalized relative to
// this choice.
// ===========================================================================

inline int subset_parity(std::uint32_t s) { return std::popcount(s) & 1; }

template <ScalarField K>
class CliffordElement {
public:
    using Coeffs = std::map<std::uint32_t, K>;

    explicit CliffordElement(SpacePtr<K> space) : space_(std::move(space)) {}

    static CliffordElement scalar(SpacePtr<K> space, const K& c) {
        CliffordElement e(std::move(space));
        e.add(0u, c);
        return e;
    }
    static CliffordElement monomial(SpacePtr<K> space, std::uint32_t bits, const K& c) {
        CliffordElement e(std::move(space));
        e.add(bits, c);
        return e;
    }
    static CliffordElement vector(SpacePtr<K> space, const Matrix<K>& v) {
        CliffordElement e(space);
        for (std::size_t i = 0; i < space->dim(); ++i)
            e.add(1u << i, v.at(i, 0));
        return e;
    }

    const SpacePtr<K>& space() const { return space_; }
    const Coeffs& coeffs() const { return c_; }
    bool zero() const { return c_.empty(); }

    void add(std::uint32_t bits, const K& c) {
        if (is_zero(c)) return;
        auto it = c_.find(bits);
        if (it == c_.end()) {
            c_.emplace(bits, c);
        } else {
            it->second = it->second + c;
            if (is_zero(it->second)) c_.erase(it);
        }
    }

    friend CliffordElement operator+(const CliffordElement& a, const CliffordElement& b) {
        a.same(b);
        CliffordElement r = a;
        for (const auto& [s, c] : b.c_) r.add(s, c);
        return r;
    }
    friend CliffordElement operator-(const CliffordElement& a, const CliffordElement& b) {
        a.same(b);
        CliffordElement r = a;
        for (const auto& [s, c] : b.c_) r.add(s, zero_like(c) - c);
        return r;
    }
    CliffordElement scaled(const K& f) const {
        CliffordElement r(space_);
        if (is_zero(f)) return r;
        for (const auto& [s, c] : c_) r.c_.emplace(s, c * f);
        return r;
    }
    friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
        return same_space(*a.space_, *b.space_) && a.c_ == b.c_;
    }

    // -1 mixed, 0 even, 1 odd
    int parity() const {
        int par = -2;
        for (const auto& [s, c] : c_) {
            int p = subset_parity(s);
            if (par == -2)
                par = p;
            else if (par != p)
                return -1;
        }
        return par == -2 ? 0 : par;
    }
    bool parity_homogeneous() const { return parity() >= 0; }

    // coordinates in the full 2^{2n} monomial basis
    Matrix<K> coords() const {
        Matrix<K> v(std::size_t{1} << space_->dim(), 1, space_->proto());
        for (const auto& [s, c] : c_) v.at(s, 0) = c;
        return v;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [s, c] : c_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << scalar_str(c) << ")";
            for (std::size_t i = 0; i < space_->dim(); ++i)
                if (s & (1u << i)) os << "e" << (i + 1);
        }
        return os.str();
    }

    void same(const CliffordElement& o) const {
        if (!same_space(*space_, *o.space_))
            throw OperationalError("CliffordElement: mixed algebras");
    }

private:
    SpacePtr<K> space_;
    Coeffs c_;
};

namespace detail {

// e_j · x for a generator e_j: wedge term plus pairing-weighted contraction.
template <ScalarField K>
CliffordElement<K> lmul_generator(std::size_t j, const CliffordElement<K>& x) {
    const auto& space = *x.space();
    const Matrix<K>& B = space.gram();
    CliffordElement<K> out(x.space());
    const std::uint32_t jbit = 1u << j;
    const std::uint32_t below_j = jbit - 1;
    for (const auto& [s, c] : x.coeffs()) {
        if (!(s & jbit)) {
            const K v = (std::popcount(s & below_j) & 1) ? zero_like(c) - c : c;
            out.add(s | jbit, v);
        }
        std::uint32_t rest = s;
        int pos = 0;
        while (rest) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            const K& bji = B.at(j, static_cast<std::size_t>(i));
            if (!is_zero(bji)) {
                K v = c * bji;
                if (pos & 1) v = zero_like(v) - v;
                out.add(s & ~(1u << i), v);
            }
            ++pos;
        }
    }
    return out;
}

template <ScalarField K>
CliffordElement<K> monomial_mul(std::uint32_t s, const CliffordElement<K>& b);

template <ScalarField K>
CliffordElement<K> element_mul(const CliffordElement<K>& a, const CliffordElement<K>& b) {
    CliffordElement<K> out(a.space());
    for (const auto& [s, c] : a.coeffs()) {
        CliffordElement<K> t = monomial_mul<K>(s, b);
        out = out + t.scaled(c);
    }
    return out;
}

// e_S · b, peeling the lowest generator: with j = min S and S' = S \ {j},
// e_S = e_j · e_{S'} − e_j ⌟ e_{S'} inside Cl, so
// e_S · b = e_j · (e_{S'} · b) − (e_j ⌟ e_{S'}) · b.
template <ScalarField K>
CliffordElement<K> monomial_mul(std::uint32_t s, const CliffordElement<K>& b) {
    if (s == 0) return b;
    const int j = std::countr_zero(s);
    const std::uint32_t s2 = s & (s - 1);
    CliffordElement<K> t1 = lmul_generator<K>(static_cast<std::size_t>(j), monomial_mul<K>(s2, b));
    const Matrix<K>& B = b.space()->gram();
    CliffordElement<K> contr(b.space());
    std::uint32_t rest = s2;
    int pos = 0;
    while (rest) {
        const int i = std::countr_zero(rest);
        rest &= rest - 1;
        const K& bji = B.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
        if (!is_zero(bji)) {
            K v = (pos & 1) ? zero_like(bji) - bji : bji;
            contr.add(s2 & ~(1u << i), v);
        }
        ++pos;
    }
    if (contr.zero()) return t1;
    return t1 - element_mul<K>(contr, b);
}

}  // namespace detail

template <ScalarField K>
CliffordElement<K> clifford_mul(const CliffordElement<K>& a, const CliffordElement<K>& b) {
    a.same(b);
    return detail::element_mul<K>(a, b);
}

// v·ξ for a coordinate vector v: one wedge and one contraction sweep.
template <ScalarField K>
CliffordElement<K> lmul_vector(const Matrix<K>& v, const CliffordElement<K>& x) {
    const auto& space = *x.space();
    const std::size_t d = space.dim();
    Matrix<K> bv = space.gram() * v;  // pairing(e_i, v) per row
    CliffordElement<K> out(x.space());
    for (const auto& [s, c] : x.coeffs()) {
        for (std::size_t j = 0; j < d; ++j) {
            if (s & (1u << j)) continue;
            if (is_zero(v.at(j, 0))) continue;
            K t = c * v.at(j, 0);
            if (std::popcount(s & ((1u << j) - 1)) & 1) t = zero_like(t) - t;
            out.add(s | (1u << j), t);
        }
        std::uint32_t rest = s;
        int pos = 0;
        while (rest) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            if (!is_zero(bv.at(static_cast<std::size_t>(i), 0))) {
                K t = c * bv.at(static_cast<std::size_t>(i), 0);
                if (pos & 1) t = zero_like(t) - t;
                out.add(s & ~(1u << i), t);
            }
            ++pos;
        }
    }
    return out;
}

// Reversal anti-automorphism: identity on V, reverses products. On the
// monomial basis it scales e_S by (-1)^{k(k-1)/2}, k = |S|.
template <ScalarField K>
CliffordElement<K> reverse(const CliffordElement<K>& x) {
    CliffordElement<K> out(x.space());
    for (const auto& [s, c] : x.coeffs()) {
        const int k = std::popcount(s);
        out.add(s, ((k * (k - 1) / 2) % 2) ? zero_like(c) - c : c);
    }
    return out;
}

// ξ·v via the reversal: ξ·v = reverse(v · reverse(ξ)).
template <ScalarField K>
CliffordElement<K> rmul_vector(const CliffordElement<K>& x, const Matrix<K>& v) {
    return reverse(lmul_vector(v, reverse(x)));
}

// Product w_1 · w_2 ⋯ w_m of the rows of an isotropic basis; equals the
// wedge because all mutual pairings vanish, and is nonzero iff the rows are
// independent.
template <ScalarField K>
CliffordElement<K> isotropic_volume(const IsotropicSubspace<K>& w) {
    CliffordElement<K> acc = CliffordElement<K>::scalar(w.space(), one_like(w.space()->proto()));
    for (std::size_t i = w.dim(); i-- > 0;) acc = lmul_vector(w.vec(i), acc);
    return acc;
}

// All products e_S·x for S ⊆ {0..2n-1}, by dynamic programming over subsets:
// with j = min S and S' = S \ {j},
//   e_S·x = e_j·(e_{S'}·x) − Σ_{i∈S'} ±B(j,i)·(e_{S'∖i}·x),
// every term of which is already available at a smaller index.
template <ScalarField K>
std::vector<CliffordElement<K>> all_monomial_products(const CliffordElement<K>& x) {
    const auto& space = *x.space();
    const Matrix<K>& B = space.gram();
    const std::size_t full = std::size_t{1} << space.dim();
    std::vector<CliffordElement<K>> out;
    out.reserve(full);
    out.push_back(x);
    for (std::uint32_t s = 1; s < full; ++s) {
        const int j = std::countr_zero(s);
        const std::uint32_t s2 = s & (s - 1);
        CliffordElement<K> acc = detail::lmul_generator<K>(static_cast<std::size_t>(j), out[s2]);
        std::uint32_t rest = s2;
        int pos = 0;
        while (rest) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            const K& bji = B.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
            if (!is_zero(bji)) {
                K f = (pos & 1) ? zero_like(bji) - bji : bji;
                acc = acc - out[s2 & ~(1u << i)].scaled(f);
            }
            ++pos;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

// ===========================================================================
// The Z-graded Clifford algebra of a linear system: generators V in degree 1
// and central h_1..h_m in degree 2, subject to v² = Σ_t q_t(v)·h_t. Monomials
// are (subset S, exponent vector α) with degree |S| + 2|α|, encoded in a
// uint64: subset in the low 16 bits, α_t in bits 16+8t.
// ===========================================================================

using GradedKey = std::uint64_t;

inline GradedKey graded_key(std::uint32_t subset, const std::array<std::uint8_t, 4>& alpha) {
    GradedKey k = subset;
    for (int t = 0; t < 4; ++t) k |= static_cast<GradedKey>(alpha[static_cast<std::size_t>(t)]) << (16 + 8 * t);
    return k;
}
inline std::uint32_t key_subset(GradedKey k) { return static_cast<std::uint32_t>(k & 0xffffu); }
inline std::uint8_t key_alpha(GradedKey k, int t) {
    return static_cast<std::uint8_t>((k >> (16 + 8 * t)) & 0xffu);
}
inline GradedKey key_bump_alpha(GradedKey k, int t) {
    return k + (GradedKey{1} << (16 + 8 * t));
}
inline int key_degree(GradedKey k) {
    int d = std::popcount(key_subset(k));
    for (int t = 0; t < 4; ++t) d += 2 * key_alpha(k, t);
    return d;
}

// Shared description of the system: m symmetric Gram matrices on one V.
template <ScalarField K>
class GradedAlgebra {
public:
    GradedAlgebra(std::vector<Matrix<K>> grams) : grams_(std::move(grams)) {
        if (grams_.empty() || grams_.size() > 4)
            throw OperationalError("GradedAlgebra: between 1 and 4 forms");
        const std::size_t d = grams_.front().rows();
        for (const auto& g : grams_) {
            if (g.rows() != d || g.cols() != d || !(g == g.transpose()))
                throw OperationalError("GradedAlgebra: forms must be symmetric of equal size");
        }
    }

    std::size_t dim_v() const { return grams_.front().rows(); }
    std::size_t m() const { return grams_.size(); }
    const Matrix<K>& gram(std::size_t t) const { return grams_[t]; }
    const K& proto() const { return grams_.front().proto(); }

private:
    std::vector<Matrix<K>> grams_;
};

template <ScalarField K>
using GradedAlgebraPtr = std::shared_ptr<const GradedAlgebra<K>>;

template <ScalarField K>
bool same_algebra(const GradedAlgebra<K>& a, const GradedAlgebra<K>& b) {
    if (&a == &b) return true;
    if (a.m() != b.m()) return false;
    for (std::size_t t = 0; t < a.m(); ++t)
        if (!(a.gram(t) == b.gram(t))) return false;
    return true;
}

template <ScalarField K>
class GradedElement {
public:
    using Coeffs = std::map<GradedKey, K>;

    explicit GradedElement(GradedAlgebraPtr<K> alg) : alg_(std::move(alg)) {}

    static GradedElement monomial(GradedAlgebraPtr<K> alg, GradedKey k, const K& c) {
        GradedElement e(std::move(alg));
        e.add(k, c);
        return e;
    }
    static GradedElement vector(GradedAlgebraPtr<K> alg, const Matrix<K>& v) {
        GradedElement e(alg);
        for (std::size_t i = 0; i < alg->dim_v(); ++i) e.add(GradedKey{1} << i, v.at(i, 0));
        return e;
    }

    const GradedAlgebraPtr<K>& algebra() const { return alg_; }
    const Coeffs& coeffs() const { return c_; }
    bool zero() const { return c_.empty(); }

    void add(GradedKey k, const K& c) {
        if (is_zero(c)) return;
        auto it = c_.find(k);
        if (it == c_.end()) {
            c_.emplace(k, c);
        } else {
            it->second = it->second + c;
            if (is_zero(it->second)) c_.erase(it);
        }
    }

    friend GradedElement operator+(const GradedElement& a, const GradedElement& b) {
        a.same(b);
        GradedElement r = a;
        for (const auto& [k, c] : b.c_) r.add(k, c);
        return r;
    }
    friend GradedElement operator-(const GradedElement& a, const GradedElement& b) {
        a.same(b);
        GradedElement r = a;
        for (const auto& [k, c] : b.c_) r.add(k, zero_like(c) - c);
        return r;
    }
    GradedElement scaled(const K& f) const {
        GradedElement r(alg_);
        if (is_zero(f)) return r;
        for (const auto& [k, c] : c_) r.c_.emplace(k, c * f);
        return r;
    }
    friend bool operator==(const GradedElement& a, const GradedElement& b) {
        return same_algebra(*a.alg_, *b.alg_) && a.c_ == b.c_;
    }

    // degree of a homogeneous element, -1 if zero, -2 if mixed
    int degree() const {
        int d = -1;
        for (const auto& [k, c] : c_) {
            int kd = key_degree(k);
            if (d == -1)
                d = kd;
            else if (d != kd)
                return -2;
        }
        return d;
    }

    void same(const GradedElement& o) const {
        if (!same_algebra(*alg_, *o.alg_))
            throw OperationalError("GradedElement: mixed systems");
    }

private:
    GradedAlgebraPtr<K> alg_;
    Coeffs c_;
};

namespace detail {

// e_j · x in the graded algebra: wedge plus contraction, where contracting
// against e_i contributes Σ_t B_t(j,i)·h_t.
template <ScalarField K>
GradedElement<K> graded_lmul_generator(std::size_t j, const GradedElement<K>& x) {
    const auto& alg = *x.algebra();
    GradedElement<K> out(x.algebra());
    const std::uint32_t jbit = 1u << j;
    for (const auto& [k, c] : x.coeffs()) {
        const std::uint32_t s = key_subset(k);
        if (!(s & jbit)) {
            K v = (std::popcount(s & (jbit - 1)) & 1) ? zero_like(c) - c : c;
            out.add(k | jbit, v);
        }
        std::uint32_t rest = s;
        int pos = 0;
        while (rest) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            for (std::size_t t = 0; t < alg.m(); ++t) {
                const K& bji = alg.gram(t).at(j, static_cast<std::size_t>(i));
                if (is_zero(bji)) continue;
                K v = c * bji;
                if (pos & 1) v = zero_like(v) - v;
                out.add(key_bump_alpha(k & ~static_cast<GradedKey>(1u << i), static_cast<int>(t)), v);
            }
            ++pos;
        }
    }
    return out;
}

template <ScalarField K>
GradedElement<K> graded_monomial_mul(GradedKey k, const GradedElement<K>& b);

template <ScalarField K>
GradedElement<K> graded_element_mul(const GradedElement<K>& a, const GradedElement<K>& b) {
    GradedElement<K> out(a.algebra());
    for (const auto& [k, c] : a.coeffs()) out = out + graded_monomial_mul<K>(k, b).scaled(c);
    return out;
}

template <ScalarField K>
GradedElement<K> graded_monomial_mul(GradedKey k, const GradedElement<K>& b) {
    const std::uint32_t s = key_subset(k);
    if (s == 0) {
        // pure h^α: central, just shift exponents
        GradedElement<K> out(b.algebra());
        for (const auto& [kb, cb] : b.coeffs()) {
            GradedKey shifted = kb;
            for (int t = 0; t < 4; ++t)
                for (int rep = 0; rep < key_alpha(k, t); ++rep) shifted = key_bump_alpha(shifted, t);
            out.add(shifted, cb);
        }
        return out;
    }
    const int j = std::countr_zero(s);
    const GradedKey k2 = k & (k - 1);  // clears the lowest subset bit, alpha intact
    GradedElement<K> t1 =
        graded_lmul_generator<K>(static_cast<std::size_t>(j), graded_monomial_mul<K>(k2, b));
    const auto& alg = *b.algebra();
    GradedElement<K> contr(b.algebra());
    std::uint32_t rest = key_subset(k2);
    int pos = 0;
    while (rest) {
        const int i = std::countr_zero(rest);
        rest &= rest - 1;
        for (std::size_t t = 0; t < alg.m(); ++t) {
            const K& bji = alg.gram(t).at(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
            if (is_zero(bji)) continue;
            K v = (pos & 1) ? zero_like(bji) - bji : bji;
            contr.add(key_bump_alpha(k2 & ~static_cast<GradedKey>(1u << i), static_cast<int>(t)), v);
        }
        ++pos;
    }
    if (contr.zero()) return t1;
    return t1 - graded_element_mul<K>(contr, b);
}

}  // namespace detail

template <ScalarField K>
GradedElement<K> graded_mul(const GradedElement<K>& a, const GradedElement<K>& b) {
    a.same(b);
    return detail::graded_element_mul<K>(a, b);
}

// v·ξ for v a coordinate vector (degree-1 generator).
template <ScalarField K>
GradedElement<K> graded_lmul_vector(const Matrix<K>& v, const GradedElement<K>& x) {
    const auto& alg = *x.algebra();
    const std::size_t d = alg.dim_v();
    std::vector<Matrix<K>> bv;
    for (std::size_t t = 0; t < alg.m(); ++t) bv.push_back(alg.gram(t) * v);
    GradedElement<K> out(x.algebra());
    for (const auto& [k, c] : x.coeffs()) {
        const std::uint32_t s = key_subset(k);
        for (std::size_t j = 0; j < d; ++j) {
            if (s & (1u << j)) continue;
            if (is_zero(v.at(j, 0))) continue;
            K t = c * v.at(j, 0);
            if (std::popcount(s & ((1u << j) - 1)) & 1) t = zero_like(t) - t;
            out.add(k | (GradedKey{1} << j), t);
        }
        std::uint32_t rest = s;
        int pos = 0;
        while (rest) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            for (std::size_t t = 0; t < alg.m(); ++t) {
                const K& c2 = bv[t].at(static_cast<std::size_t>(i), 0);
                if (is_zero(c2)) continue;
                K val = c * c2;
                if (pos & 1) val = zero_like(val) - val;
                out.add(key_bump_alpha(k & ~static_cast<GradedKey>(1u << i), static_cast<int>(t)), val);
            }
            ++pos;
        }
    }
    return out;
}

// Substituting h_t := λ_t lands in Cl(Σ λ_t q_t) and intertwines the
// products.
template <ScalarField K>
CliffordElement<K> specialize(const GradedElement<K>& x, const std::vector<K>& lambda,
                              const SpacePtr<K>& target) {
    const auto& alg = *x.algebra();
    if (lambda.size() != alg.m()) throw OperationalError("specialize: arity mismatch");
    CliffordElement<K> out(target);
    for (const auto& [k, c] : x.coeffs()) {
        K f = c;
        for (std::size_t t = 0; t < alg.m(); ++t)
            for (int rep = 0; rep < key_alpha(k, static_cast<int>(t)); ++rep) f = f * lambda[t];
        out.add(key_subset(k), f);
    }
    return out;
}

// ===========================================================================
// Graded piece bookkeeping.
// ===========================================================================

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// rank Γ(A_k|_L) = Σ_j C(2n, k-2j)·C(m-1+j, j)
inline std::uint64_t graded_piece_dim(std::size_t dim_v, std::size_t m, int k) {
    if (k < 0) return 0;
    std::uint64_t total = 0;
    for (int j = 0; 2 * j <= k; ++j)
        total += binomial(dim_v, static_cast<std::uint64_t>(k - 2 * j)) *
                 binomial(m - 1 + static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(j));
    return total;
}

namespace detail {

inline void enumerate_alphas(std::size_t m, int budget, std::array<std::uint8_t, 4>& alpha,
                             std::size_t t, std::vector<std::array<std::uint8_t, 4>>& out) {
    if (t == m) {
        if (budget == 0) out.push_back(alpha);
        return;
    }
    for (int a = 0; a <= budget; ++a) {
        alpha[t] = static_cast<std::uint8_t>(a);
        enumerate_alphas(m, budget - a, alpha, t + 1, out);
    }
    alpha[t] = 0;
}

}  // namespace detail

// Monomial basis of the degree-k piece: all (S, α) with |S| + 2|α| = k,
// ordered by |α|, then α lexicographically, then subset value. The |α|-major
// order is what the exactness pivot split expects.
inline std::vector<GradedKey> graded_piece_basis(std::size_t dim_v, std::size_t m, int k) {
    std::vector<GradedKey> out;
    for (int j = 0; 2 * j <= k; ++j) {
        const int size_s = k - 2 * j;
        if (size_s > static_cast<int>(dim_v)) continue;
        std::vector<std::array<std::uint8_t, 4>> alphas;
        std::array<std::uint8_t, 4> alpha{0, 0, 0, 0};
        detail::enumerate_alphas(m, j, alpha, 0, alphas);
        for (const auto& a : alphas)
            for (std::uint32_t s = 0; s < (1u << dim_v); ++s)
                if (std::popcount(s) == size_s) out.push_back(graded_key(s, a));
    }
    return out;
}

struct RankTable {
    std::vector<std::uint64_t> ranks;  // index k = 0..k_max
    bool stabilized{false};            // m = 1: constant 2^{2n-1} from k = 2n-1 on
    std::uint64_t stable_value{0};
};

// Ranks of the graded pieces by explicit monomial enumeration. For m = 1 the
// table also reports whether the ranks stabilize at 2^{2n-1} from k = 2n-1,
// with rank(k+2) = rank(k) there.
inline RankTable rank_stabilization_table(std::size_t dim_v, std::size_t m, int k_max) {
    RankTable t;
    for (int k = 0; k <= k_max; ++k)
        t.ranks.push_back(static_cast<std::uint64_t>(graded_piece_basis(dim_v, m, k).size()));
    if (m == 1) {
        const std::uint64_t target = std::uint64_t{1} << (dim_v - 1);
        t.stable_value = target;
        t.stabilized = true;
        for (int k = static_cast<int>(dim_v) - 1; k <= k_max; ++k) {
            if (t.ranks[static_cast<std::size_t>(k)] != target) t.stabilized = false;
            if (k + 2 <= k_max &&
                t.ranks[static_cast<std::size_t>(k + 2)] != t.ranks[static_cast<std::size_t>(k)])
                t.stabilized = false;
        }
    }
    return t;
}

// Matrix of left multiplication by v from degree k to degree k+1, in the
// graded_piece_basis orderings.
template <ScalarField K>
Matrix<K> graded_lmul_matrix(const GradedAlgebraPtr<K>& alg, const Matrix<K>& v, int k) {
    const auto dom = graded_piece_basis(alg->dim_v(), alg->m(), k);
    const auto cod = graded_piece_basis(alg->dim_v(), alg->m(), k + 1);
    std::map<GradedKey, std::size_t> index;
    for (std::size_t i = 0; i < cod.size(); ++i) index.emplace(cod[i], i);
    Matrix<K> mat(cod.size(), dom.size(), alg->proto());
    for (std::size_t j = 0; j < dom.size(); ++j) {
        GradedElement<K> img = graded_lmul_vector(
            v, GradedElement<K>::monomial(alg, dom[j], one_like(alg->proto())));
        for (const auto& [kk, c] : img.coeffs()) {
            auto it = index.find(kk);
            if (it == index.end()) throw Error("graded_lmul_matrix: image outside degree k+1");
            mat.at(it->second, j) = c;
        }
    }
    return mat;
}

}  // namespace quadspin

#endif
