#ifndef QUADSPIN_UPOLY_HPP
#define QUADSPIN_UPOLY_HPP

#include <algorithm>
#include <vector>

#include "quadspin/matrix.hpp"
#include "quadspin/rng.hpp"

namespace quadspin {

// Dense univariate polynomial, coefficients low to high, no trailing zeros.
template <ScalarField K>
class UniPoly {
public:
    explicit UniPoly(const K& like) : proto_(zero_like(like)) {}
    UniPoly(std::vector<K> coeffs, const K& like) : proto_(zero_like(like)), c_(std::move(coeffs)) {
        trim();
    }
    static UniPoly x(const K& like) { return UniPoly({zero_like(like), one_like(like)}, like); }
    static UniPoly constant(const K& value) { return UniPoly({value}, value); }

    int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool zero() const { return c_.empty(); }
    const K& proto() const { return proto_; }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : proto_; }
    K lead() const { return c_.empty() ? proto_ : c_.back(); }

    friend UniPoly operator+(const UniPoly& f, const UniPoly& g) {
        std::vector<K> r(std::max(f.c_.size(), g.c_.size()), f.proto_);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.coeff(i) + g.coeff(i);
        return UniPoly(std::move(r), f.proto_);
    }
    friend UniPoly operator-(const UniPoly& f, const UniPoly& g) {
        std::vector<K> r(std::max(f.c_.size(), g.c_.size()), f.proto_);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.coeff(i) - g.coeff(i);
        return UniPoly(std::move(r), f.proto_);
    }
    friend UniPoly operator*(const UniPoly& f, const UniPoly& g) {
        if (f.zero() || g.zero()) return UniPoly(f.proto_);
        std::vector<K> r(f.c_.size() + g.c_.size() - 1, f.proto_);
        for (std::size_t i = 0; i < f.c_.size(); ++i) {
            if (is_zero(f.c_[i])) continue;
            for (std::size_t j = 0; j < g.c_.size(); ++j)
                r[i + j] = r[i + j] + f.c_[i] * g.c_[j];
        }
        return UniPoly(std::move(r), f.proto_);
    }
    UniPoly scaled(const K& s) const {
        std::vector<K> r = c_;
        for (K& x : r) x = x * s;
        return UniPoly(std::move(r), proto_);
    }
    UniPoly monic() const {
        if (zero()) return *this;
        return scaled(inv_of(lead()));
    }

    // Division with remainder; divisor must be nonzero.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& f, const UniPoly& g) {
        if (g.zero()) throw OperationalError("UniPoly: division by zero polynomial");
        UniPoly r = f;
        std::vector<K> q(std::max<int>(f.deg() - g.deg() + 1, 0), f.proto_);
        const K glead_inv = inv_of(g.lead());
        while (!r.zero() && r.deg() >= g.deg()) {
            const int shift = r.deg() - g.deg();
            const K factor = r.lead() * glead_inv;
            q[shift] = q[shift] + factor;
            for (int i = 0; i <= g.deg(); ++i)
                r.c_[i + shift] = r.c_[i + shift] - factor * g.c_[i];
            r.trim();
        }
        return {UniPoly(std::move(q), f.proto_), r};
    }

    friend bool operator==(const UniPoly& f, const UniPoly& g) {
        if (f.c_.size() != g.c_.size()) return false;
        for (std::size_t i = 0; i < f.c_.size(); ++i)
            if (!(f.c_[i] == g.c_[i])) return false;
        return true;
    }

    K eval(const K& x) const {
        K r = proto_;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly(proto_);
        std::vector<K> r(c_.size() - 1, proto_);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * int_like(proto_, static_cast<long>(i));
        return UniPoly(std::move(r), proto_);
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }

    K proto_{};
    std::vector<K> c_;
};

// Monic gcd by the Euclidean algorithm (normalizing each remainder keeps
// rational coefficients from blowing up).
template <ScalarField K>
UniPoly<K> upoly_gcd(UniPoly<K> a, UniPoly<K> b) {
    while (!b.zero()) {
        auto [q, r] = divmod(a, b);
        a = b;
        b = r.zero() ? r : r.monic();
    }
    return a.zero() ? a : a.monic();
}

// Resultant via the Sylvester matrix (sizes here are tiny).
template <ScalarField K>
K upoly_resultant(const UniPoly<K>& f, const UniPoly<K>& g) {
    const int m = f.deg(), n = g.deg();
    if (m < 0 || n < 0) return zero_like(f.proto());
    if (m == 0) return n == 0 ? one_like(f.proto()) : [&] {
        K r = one_like(f.proto());
        for (int i = 0; i < n; ++i) r = r * f.coeff(0);
        return r;
    }();
    if (n == 0) {
        K r = one_like(f.proto());
        for (int i = 0; i < m; ++i) r = r * g.coeff(0);
        return r;
    }
    Matrix<K> s(static_cast<std::size_t>(m + n), static_cast<std::size_t>(m + n), f.proto());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s.at(i, i + j) = f.coeff(static_cast<std::size_t>(m - j));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s.at(n + i, i + j) = g.coeff(static_cast<std::size_t>(n - j));
    return s.det();
}

// x^e mod f by square and multiply.
UniPoly<Fp> fp_pow_x_mod(std::uint64_t e, const UniPoly<Fp>& f);

// All distinct roots of f in F_p, ascending. Deterministic given the seed
// (equal-degree splitting draws its shifts from it).
std::vector<Fp> fp_roots(const UniPoly<Fp>& f, std::uint64_t seed = 0x9d5f);

}  // namespace quadspin

#endif
