#ifndef QUADSPIN_MULTIPOLY_HPP
#define QUADSPIN_MULTIPOLY_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "quadspin/matrix.hpp"
#include "quadspin/rng.hpp"
#include "quadspin/upoly.hpp"

namespace quadspin {

// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
template <ScalarField K>
class MultiPoly {
public:
    using Expo = std::vector<std::uint32_t>;

    MultiPoly(int nvars, const K& like) : nvars_(nvars), proto_(zero_like(like)) {}

    static MultiPoly constant(int nvars, const K& value) {
        MultiPoly p(nvars, value);
        p.add_term(Expo(static_cast<std::size_t>(nvars), 0), value);
        return p;
    }
    static MultiPoly variable(int nvars, int index, const K& like) {
        MultiPoly p(nvars, like);
        Expo e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(index)] = 1;
        p.add_term(e, one_like(like));
        return p;
    }

    int nvars() const { return nvars_; }
    const K& proto() const { return proto_; }
    bool zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Expo, K>& terms() const { return terms_; }

    void add_term(const Expo& e, const K& c) {
        if (static_cast<int>(e.size()) != nvars_) throw OperationalError("MultiPoly: bad exponent length");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!is_zero(c)) terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    friend MultiPoly operator+(const MultiPoly& f, const MultiPoly& g) {
        f.same_vars(g);
        MultiPoly r = f;
        for (const auto& [e, c] : g.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& f, const MultiPoly& g) {
        f.same_vars(g);
        MultiPoly r = f;
        for (const auto& [e, c] : g.terms_) r.add_term(e, zero_like(f.proto_) - c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& f, const MultiPoly& g) {
        f.same_vars(g);
        MultiPoly r(f.nvars_, f.proto_);
        for (const auto& [ef, cf] : f.terms_)
            for (const auto& [eg, cg] : g.terms_) {
                Expo e = ef;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eg[i];
                r.add_term(e, cf * cg);
            }
        return r;
    }
    MultiPoly scaled(const K& s) const {
        MultiPoly r(nvars_, proto_);
        if (is_zero(s)) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    friend bool operator==(const MultiPoly& f, const MultiPoly& g) {
        return f.nvars_ == g.nvars_ && f.terms_ == g.terms_;
    }

    int total_degree() const {  // -1 for the zero polynomial
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (auto x : e) s += static_cast<int>(x);
            d = std::max(d, s);
        }
        return d;
    }

    bool is_homogeneous() const {
        int d = -2;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (auto x : e) s += static_cast<int>(x);
            if (d == -2)
                d = s;
            else if (s != d)
                return false;
        }
        return true;
    }

    K eval(const std::vector<K>& x) const {
        if (static_cast<int>(x.size()) != nvars_) throw OperationalError("MultiPoly::eval: arity");
        K r = proto_;
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k) t = t * x[i];
            r = r + t;
        }
        return r;
    }

    MultiPoly derivative(int var) const {
        MultiPoly r(nvars_, proto_);
        const auto v = static_cast<std::size_t>(var);
        for (const auto& [e, c] : terms_) {
            if (e[v] == 0) continue;
            Expo e2 = e;
            e2[v] -= 1;
            r.add_term(e2, c * int_like(proto_, static_cast<long>(e[v])));
        }
        return r;
    }

    // Restriction to two variables as a univariate in var `keep`, the other
    // one set to 1.
    UniPoly<K> dehomogenize(int keep) const {
        if (nvars_ != 2) throw OperationalError("dehomogenize: two variables required");
        std::vector<K> c;
        for (const auto& [e, coeff] : terms_) {
            const std::size_t d = e[static_cast<std::size_t>(keep)];
            if (c.size() <= d) c.resize(d + 1, proto_);
            c[d] = c[d] + coeff;
        }
        return UniPoly<K>(std::move(c), proto_);
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << scalar_str(c) << ")";
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) {
                    os << "*" << names[i];
                    if (e[i] > 1) os << "^" << e[i];
                }
        }
        return os.str();
    }

private:
    void same_vars(const MultiPoly& o) const {
        if (nvars_ != o.nvars_) throw OperationalError("MultiPoly: arity mismatch");
    }

    int nvars_;
    K proto_;
    std::map<Expo, K> terms_;
};

// ---------------------------------------------------------------------------
// det(λ₁B₁ + … + λ_mB_m) by evaluation-interpolation. Homogeneous of degree
// N (the common size of the Bₜ), so interpolating the dehomogenization at
// λ₁ = 1 on the grid {0..N}^{m-1} recovers it exactly. The result is checked
// against direct determinant evaluation at `verify_points` random points.
// ---------------------------------------------------------------------------

namespace detail {

// Interpolates det(B₁ + y₂B₂ + … + y_mB_m) as a polynomial in y₂..y_m
// (indices 1..m-1 of `point`), one variable at a time on nodes 0..nnodes-1.
template <ScalarField K>
MultiPoly<K> interp_det(int var, int m, int nnodes, std::vector<K>& point,
                        const std::vector<Matrix<K>>& mats) {
    const K like = mats.front().proto();
    if (var == m) {
        const std::size_t n = mats.front().rows();
        Matrix<K> acc(n, n, like);
        for (std::size_t t = 0; t < mats.size(); ++t)
            if (!is_zero(point[t])) acc = acc + mats[t].scaled(point[t]);
        return MultiPoly<K>::constant(m - 1, acc.det());
    }
    std::vector<MultiPoly<K>> values;
    values.reserve(static_cast<std::size_t>(nnodes));
    for (int a = 0; a < nnodes; ++a) {
        point[static_cast<std::size_t>(var)] = int_like(like, a);
        values.push_back(interp_det(var + 1, m, nnodes, point, mats));
    }
    MultiPoly<K> result(m - 1, like);
    for (int i = 0; i < nnodes; ++i) {
        if (values[static_cast<std::size_t>(i)].zero()) continue;
        MultiPoly<K> basis = MultiPoly<K>::constant(m - 1, one_like(like));
        K denom = one_like(like);
        for (int j = 0; j < nnodes; ++j) {
            if (j == i) continue;
            basis = basis * (MultiPoly<K>::variable(m - 1, var - 1, like) -
                             MultiPoly<K>::constant(m - 1, int_like(like, j)));
            denom = denom * int_like(like, static_cast<long>(i - j));
        }
        result = result + basis * values[static_cast<std::size_t>(i)].scaled(inv_of(denom));
    }
    return result;
}

}  // namespace detail

template <ScalarField K>
MultiPoly<K> det_of_linear_matrix(const std::vector<Matrix<K>>& mats, int verify_points = 3,
                                  std::uint64_t verify_seed = 0x5eedd) {
    if (mats.empty()) throw OperationalError("det_of_linear_matrix: no matrices");
    const std::size_t n = mats.front().rows();
    const int m = static_cast<int>(mats.size());
    for (const auto& b : mats)
        if (b.rows() != n || b.cols() != n)
            throw OperationalError("det_of_linear_matrix: sizes differ or non-square");
    const K like = mats.front().proto();
    if constexpr (std::is_same_v<K, Fp>) {
        const std::uint64_t p = like.p;
        if (p <= n * static_cast<std::size_t>(m + 2))
            throw FieldTooSmallError("det_of_linear_matrix: need p > N*(m+2), got p=" +
                                     std::to_string(p));
    }

    MultiPoly<K> f(m, like);
    if (m == 1) {
        const K d = mats[0].det();
        if (!is_zero(d)) f.add_term({static_cast<std::uint32_t>(n)}, d);
    } else {
        const int nnodes = static_cast<int>(n) + 1;
        std::vector<K> point(static_cast<std::size_t>(m), one_like(like));
        MultiPoly<K> dehom = detail::interp_det(1, m, nnodes, point, mats);
        if (dehom.total_degree() > static_cast<int>(n))
            throw Error("det_of_linear_matrix: interpolated degree exceeds N");
        // rehomogenize to degree N with λ₁
        for (const auto& [e, c] : dehom.terms()) {
            std::uint32_t s = 0;
            for (auto x : e) s += x;
            typename MultiPoly<K>::Expo full(static_cast<std::size_t>(m), 0);
            full[0] = static_cast<std::uint32_t>(n) - s;
            for (std::size_t i = 0; i < e.size(); ++i) full[i + 1] = e[i];
            f.add_term(full, c);
        }
    }

    // verification at random extra points
    Rng rng(verify_seed);
    for (int t = 0; t < verify_points; ++t) {
        std::vector<K> lam;
        for (int i = 0; i < m; ++i) lam.push_back(random_scalar(rng, like));
        Matrix<K> acc(n, n, like);
        for (int i = 0; i < m; ++i)
            if (!is_zero(lam[static_cast<std::size_t>(i)]))
                acc = acc + mats[static_cast<std::size_t>(i)].scaled(lam[static_cast<std::size_t>(i)]);
        if (!(f.eval(lam) == acc.det()))
            throw Error("det_of_linear_matrix: verification point mismatch");
    }
    return f;
}

// ---------------------------------------------------------------------------
// Squarefreeness of a nonzero homogeneous binary form, by Euclidean gcds of
// dehomogenizations: split off the powers of λ₁ and λ₂ and test the core for
// repeated factors against its derivative.
// ---------------------------------------------------------------------------

template <ScalarField K>
bool poly_is_squarefree(const MultiPoly<K>& f) {
    if (f.nvars() != 2) throw OperationalError("poly_is_squarefree: two variables required");
    if (f.zero()) throw OperationalError("poly_is_squarefree: zero polynomial rejected");
    if (!f.is_homogeneous()) throw OperationalError("poly_is_squarefree: homogeneous input required");
    const int d = f.total_degree();
    UniPoly<K> u = f.dehomogenize(0);  // polynomial in λ₁ with λ₂ = 1
    const int mult_l2 = d - u.deg();   // multiplicity of the λ₂ factor
    int mult_l1 = 0;
    while (is_zero(u.coeff(static_cast<std::size_t>(mult_l1)))) ++mult_l1;
    if (mult_l1 > 1 || mult_l2 > 1) return false;
    // strip λ₁^mult and test the core
    std::vector<K> core(u.coeffs().begin() + mult_l1, u.coeffs().end());
    UniPoly<K> h(std::move(core), f.proto());
    if (h.deg() <= 0) return true;
    UniPoly<K> g = upoly_gcd(h, h.derivative());
    return g.deg() == 0;
}

}  // namespace quadspin

#endif
