#ifndef QUADSPIN_LINSYS_HPP
#define QUADSPIN_LINSYS_HPP

#include <algorithm>
#include <map>
#include <set>

#include "quadspin/clifford.hpp"
#include "quadspin/multipoly.hpp"
#include "quadspin/spinor.hpp"

namespace quadspin {

// ===========================================================================
// Linear systems of quadrics: the span L of m Gram matrices on a shared V.
// ===========================================================================

template <ScalarField K>
class LinearSystem {
public:
    LinearSystem(std::size_t n, std::vector<Matrix<K>> grams)
        : n_(n), grams_(std::move(grams)) {
        if (n_ < 2 || n_ > 4) throw OperationalError("LinearSystem: n must be 2, 3 or 4");
        if (grams_.size() < 2 || grams_.size() > 4)
            throw OperationalError("LinearSystem: m must be 2, 3 or 4");
        const std::size_t d = 2 * n_;
        for (const auto& b : grams_)
            if (b.rows() != d || b.cols() != d || !(b == b.transpose()))
                throw OperationalError("LinearSystem: forms must be symmetric of size 2n");
        // independence of the span inside Sym²
        const std::size_t nsym = d * (d + 1) / 2;
        Matrix<K> vec(grams_.size(), nsym, proto());
        for (std::size_t t = 0; t < grams_.size(); ++t) {
            std::size_t col = 0;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i; j < d; ++j) vec.at(t, col++) = grams_[t].at(i, j);
        }
        if (vec.rank() != grams_.size())
            throw OperationalError("LinearSystem: forms are linearly dependent");
    }

    std::size_t n() const { return n_; }
    std::size_t m() const { return grams_.size(); }
    std::size_t dim_v() const { return 2 * n_; }
    const std::vector<Matrix<K>>& grams() const { return grams_; }
    const K& proto() const { return grams_.front().proto(); }

    Matrix<K> member(const std::vector<K>& lambda) const {
        if (lambda.size() != m()) throw OperationalError("member: arity mismatch");
        Matrix<K> acc(dim_v(), dim_v(), proto());
        for (std::size_t t = 0; t < m(); ++t)
            if (!is_zero(lambda[t])) acc = acc + grams_[t].scaled(lambda[t]);
        return acc;
    }

    K q_at(std::size_t t, const Matrix<K>& v) const {
        return (v.transpose() * grams_[t] * v).at(0, 0);
    }
    Matrix<K> pairing_row(std::size_t t, const Matrix<K>& v) const {
        return (grams_[t] * v).transpose();  // pairing_t(v, ·) as a row
    }

private:
    std::size_t n_;
    std::vector<Matrix<K>> grams_;
};

template <ScalarField K>
LinearSystem<K> system_from_spaces(const std::vector<QuadraticSpace<K>>& spaces) {
    std::vector<Matrix<K>> grams;
    for (const auto& s : spaces) grams.push_back(s.gram());
    return LinearSystem<K>(spaces.front().n(), std::move(grams));
}

// ---------------------------------------------------------------------------
// Discriminant and corank stratification.
// ---------------------------------------------------------------------------

template <ScalarField K>
struct DiscriminantReport {
    MultiPoly<K> poly;
    int degree{-1};
    bool degenerate{false};  // degree deficiency (or zero polynomial)
};

template <ScalarField K>
DiscriminantReport<K> discriminant(const LinearSystem<K>& sys, std::uint64_t verify_seed = 0x5eedd) {
    DiscriminantReport<K> r{det_of_linear_matrix(sys.grams(), 20, verify_seed), -1, false};
    r.degree = r.poly.total_degree();
    r.degenerate = (r.degree != static_cast<int>(sys.dim_v()));
    return r;
}

template <ScalarField K>
std::size_t corank_at(const LinearSystem<K>& sys, const std::vector<K>& lambda) {
    bool all_zero = true;
    for (const auto& l : lambda) all_zero &= is_zero(l);
    if (all_zero) throw OperationalError("corank_at: lambda must be nonzero");
    return sys.dim_v() - sys.member(lambda).rank();
}

struct StrataReport {
    std::uint64_t prime{0};
    std::map<std::size_t, std::uint64_t> counts;                  // corank -> #points
    std::map<std::size_t, std::vector<std::vector<Fp>>> witness;  // up to 10 per corank >= 1
    bool corank3_seen{false};

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (const auto& [c, k] : counts) s += k;
        return s;
    }
};

// Reduction of a rational system mod p; denominators must be units.
inline LinearSystem<Fp> reduce_system(const LinearSystem<Rat>& sys, std::uint64_t p) {
    std::vector<Matrix<Fp>> grams;
    for (const auto& b : sys.grams()) {
        Matrix<Fp> r(b.rows(), b.cols(), Fp(0, p));
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                r.at(i, j) = fp_from_string(scalar_str(b.at(i, j)), p);
        grams.push_back(std::move(r));
    }
    return LinearSystem<Fp>(sys.n(), std::move(grams));
}

namespace detail {

// Enumerates normalized representatives of P^{m-1}(F_p): first nonzero
// coordinate equal to 1.
template <class Fn>
void enumerate_projective(std::size_t m, std::uint64_t p, Fn&& fn) {
    std::vector<Fp> lambda(m, Fp(0, p));
    for (std::size_t lead = 0; lead < m; ++lead) {
        for (std::size_t i = 0; i < lead; ++i) lambda[i] = Fp(0, p);
        lambda[lead] = Fp(1, p);
        const std::size_t free = m - lead - 1;
        std::vector<std::uint64_t> digits(free, 0);
        for (;;) {
            for (std::size_t i = 0; i < free; ++i)
                lambda[lead + 1 + i] = Fp(static_cast<std::int64_t>(digits[i]), p);
            fn(lambda);
            std::size_t pos = 0;
            while (pos < free && ++digits[pos] == p) digits[pos++] = 0;
            if (pos == free) break;
        }
    }
}

}  // namespace detail

// Full scan of P^{m-1}(F_p) with corank counts. The system must either live
// over F_p already or reduce mod p (rational entries with unit denominators).
inline StrataReport strata_scan(const LinearSystem<Fp>& sys, std::uint64_t p_small) {
    if (p_small < 3 || !is_prime_u64(p_small))
        throw OperationalError("strata_scan: p must be an odd prime");
    if (sys.proto().p != p_small)
        throw OperationalError("strata_scan: scan prime differs from the system's field");
    StrataReport rep;
    rep.prime = p_small;
    detail::enumerate_projective(sys.m(), p_small, [&](const std::vector<Fp>& lambda) {
        const std::size_t c = corank_at(sys, lambda);
        rep.counts[c] += 1;
        if (c >= 3) rep.corank3_seen = true;
        if (c >= 1 && rep.witness[c].size() < 10) rep.witness[c].push_back(lambda);
    });
    return rep;
}

inline StrataReport strata_scan(const LinearSystem<Rat>& sys, std::uint64_t p_small) {
    return strata_scan(reduce_system(sys, p_small), p_small);
}

// ---------------------------------------------------------------------------
// Double cover report: discriminant, branch smoothness, and the singular
// candidates (corank >= 2 members), found two ways and cross-checked.
// ---------------------------------------------------------------------------

struct DoubleCoverReportMeta {
    enum class Scan { full, reduced, unavailable };
    Scan scan{Scan::unavailable};
    std::uint64_t prime{0};
};

template <ScalarField K>
struct DoubleCoverReport {
    DiscriminantReport<K> disc;
    bool branch_smooth{false};
    std::vector<std::vector<Fp>> candidates_rank;      // corank >= 2 by rank scan
    std::vector<std::vector<Fp>> candidates_gradient;  // disc = 0 and ∇disc = 0
    bool methods_agree{false};
    DoubleCoverReportMeta meta;
};

namespace detail {

inline bool lambda_less(const std::vector<Fp>& a, const std::vector<Fp>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].v != b[i].v) return a[i].v < b[i].v;
    }
    return false;
}

// both candidate searches over an enumerable P^{m-1}(F_p)
inline void cover_scan(const LinearSystem<Fp>& sys, const MultiPoly<Fp>& disc,
                       std::vector<std::vector<Fp>>& by_rank,
                       std::vector<std::vector<Fp>>& by_gradient) {
    const std::uint64_t p = sys.proto().p;
    std::vector<MultiPoly<Fp>> grads;
    for (std::size_t t = 0; t < sys.m(); ++t) grads.push_back(disc.derivative(static_cast<int>(t)));
    detail::enumerate_projective(sys.m(), p, [&](const std::vector<Fp>& lambda) {
        if (corank_at(sys, lambda) >= 2) by_rank.push_back(lambda);
        if (is_zero(disc.eval(lambda))) {
            bool grad_zero = true;
            for (const auto& g : grads) grad_zero &= is_zero(g.eval(lambda));
            if (grad_zero) by_gradient.push_back(lambda);
        }
    });
    std::sort(by_rank.begin(), by_rank.end(), lambda_less);
    std::sort(by_gradient.begin(), by_gradient.end(), lambda_less);
}

inline std::uint64_t pick_reduction_prime(std::size_t dim_v, std::size_t m) {
    std::uint64_t p = dim_v * (m + 2) + 1;
    while (!is_prime_u64(p)) ++p;
    return p;
}

}  // namespace detail

inline constexpr std::uint64_t kCoverScanLimit = 2'000'000;

inline bool cover_scan_feasible(std::size_t m, std::uint64_t p) {
    long double pts = 0, pw = 1;
    for (std::size_t i = 0; i < m; ++i) {
        pts += pw;
        pw *= static_cast<long double>(p);
    }
    return pts <= static_cast<long double>(kCoverScanLimit);
}

inline DoubleCoverReport<Fp> double_cover_report(const LinearSystem<Fp>& sys,
                                                 std::uint64_t verify_seed = 0x5eedd) {
    DoubleCoverReport<Fp> rep{discriminant(sys, verify_seed), false, {}, {}, false, {}};
    const std::uint64_t p = sys.proto().p;
    if (sys.m() == 2) {
        rep.branch_smooth = !rep.disc.poly.zero() && poly_is_squarefree(rep.disc.poly);
        rep.meta.scan = DoubleCoverReportMeta::Scan::full;
        rep.meta.prime = p;
        detail::cover_scan(sys, rep.disc.poly, rep.candidates_rank, rep.candidates_gradient);
    } else if (cover_scan_feasible(sys.m(), p)) {
        rep.meta.scan = DoubleCoverReportMeta::Scan::full;
        rep.meta.prime = p;
        detail::cover_scan(sys, rep.disc.poly, rep.candidates_rank, rep.candidates_gradient);
        rep.branch_smooth = rep.candidates_gradient.empty();
    } else {
        rep.meta.scan = DoubleCoverReportMeta::Scan::unavailable;
        rep.branch_smooth = false;
    }
    // re-verify every rank candidate before reporting it
    for (const auto& lambda : rep.candidates_rank)
        if (corank_at(sys, lambda) < 2) throw Error("double_cover_report: witness re-check failed");
    rep.methods_agree = rep.candidates_rank == rep.candidates_gradient;
    return rep;
}

// Rational systems are reported through a small-prime reduction.
inline DoubleCoverReport<Fp> double_cover_report(const LinearSystem<Rat>& sys,
                                                 std::uint64_t scan_prime = 0,
                                                 std::uint64_t verify_seed = 0x5eedd) {
    const std::uint64_t p =
        scan_prime ? scan_prime : detail::pick_reduction_prime(sys.dim_v(), sys.m());
    auto rep = double_cover_report(reduce_system(sys, p), verify_seed);
    rep.meta.scan = DoubleCoverReportMeta::Scan::reduced;
    rep.meta.prime = p;
    return rep;
}

// ===========================================================================
// Base locus sampling over F_p. The search is randomized but deterministic
// in the seed; every returned point is verified exactly on all forms. An
// empty result is possible (X(F_p) can be empty or merely elusive within the
// trial budget).
// ===========================================================================

template <ScalarField K>
struct BaseLocusPoint {
    Matrix<K> v;
    bool smooth{false};        // Jacobian rank m at v
    bool off_radicals{false};  // v avoids the radical of every sampled singular member
};

namespace detail {

// x with q(x) = 0, x != 0, pairing(x, ·) not identically zero
inline std::optional<Matrix<Fp>> point_on_quadric(const Matrix<Fp>& B, Rng& rng, int tries = 200) {
    const std::size_t d = B.rows();
    const std::uint64_t p = B.proto().p;
    const Fp two(2, p), four(4, p);
    for (int t = 0; t < tries; ++t) {
        Matrix<Fp> u(d, 1, B.proto()), w(d, 1, B.proto());
        for (std::size_t i = 0; i < d; ++i) {
            u.at(i, 0) = rng.fp(p);
            w.at(i, 0) = rng.fp(p);
        }
        const Fp a = (w.transpose() * B * w).at(0, 0);
        const Fp b = two * (u.transpose() * B * w).at(0, 0);
        const Fp c = (u.transpose() * B * u).at(0, 0);
        Matrix<Fp> v(d, 1, B.proto());
        if (is_zero(a)) {
            if (is_zero(b)) continue;
            v = u + w.scaled((zero_like(c) - c) * inv_of(b));
        } else {
            auto root = fp_sqrt(b * b - four * a * c);
            if (!root) continue;
            v = u + w.scaled((*root - b) * inv_of(two * a));
        }
        if (v.is_zero_matrix()) continue;
        if ((B * v).is_zero_matrix()) continue;  // radical points have no tangent cone
        return v;
    }
    return std::nullopt;
}

// Stereographic coordinates of the quadric {q_B = 0} from the smooth point
// v0, restricted to directions u = P s: a vector of quadratics in s.
inline std::vector<MultiPoly<Fp>> quadric_param(const Matrix<Fp>& B, const Matrix<Fp>& v0,
                                                const Matrix<Fp>& P) {
    const int nv = static_cast<int>(P.cols());
    const Fp like = B.proto();
    const std::size_t d = B.rows();
    Matrix<Fp> pbp = P.transpose() * B * P;        // q(Ps)
    Matrix<Fp> v0bp = (v0.transpose() * B) * P;    // pairing(v0, Ps)
    MultiPoly<Fp> q_of_s(nv, like), l_of_s(nv, like);
    for (int i = 0; i < nv; ++i) {
        l_of_s = l_of_s + MultiPoly<Fp>::variable(nv, i, like).scaled(v0bp.at(0, static_cast<std::size_t>(i)));
        for (int j = 0; j < nv; ++j)
            q_of_s = q_of_s + (MultiPoly<Fp>::variable(nv, i, like) *
                               MultiPoly<Fp>::variable(nv, j, like))
                                  .scaled(pbp.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
    std::vector<MultiPoly<Fp>> x;
    const Fp minus2 = zero_like(like) - Fp(2, like.p);
    for (std::size_t i = 0; i < d; ++i) {
        MultiPoly<Fp> pi(nv, like);
        for (int j = 0; j < nv; ++j)
            pi = pi + MultiPoly<Fp>::variable(nv, j, like).scaled(P.at(i, static_cast<std::size_t>(j)));
        x.push_back(q_of_s.scaled(v0.at(i, 0)) + (l_of_s * pi).scaled(minus2));
    }
    return x;
}

// q_B pulled through a vector of polynomials
inline MultiPoly<Fp> form_on_param(const Matrix<Fp>& B, const std::vector<MultiPoly<Fp>>& x) {
    MultiPoly<Fp> acc(x.front().nvars(), B.proto());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (is_zero(B.at(i, j))) continue;
            acc = acc + (x[i] * x[j]).scaled(B.at(i, j));
        }
    return acc;
}

// coefficient polynomials of f seen as a polynomial in variable `var`
inline std::vector<MultiPoly<Fp>> coeffs_in_var(const MultiPoly<Fp>& f, int var) {
    std::vector<MultiPoly<Fp>> out;
    const int nv = f.nvars();
    for (const auto& [e, c] : f.terms()) {
        const std::size_t dv = e[static_cast<std::size_t>(var)];
        while (out.size() <= dv) out.emplace_back(nv, f.proto());
        auto e2 = e;
        e2[static_cast<std::size_t>(var)] = 0;
        out[dv].add_term(e2, c);
    }
    if (out.empty()) out.emplace_back(nv, f.proto());
    return out;
}

inline UniPoly<Fp> eval_coeffs(const std::vector<MultiPoly<Fp>>& coeffs, const std::vector<Fp>& at) {
    std::vector<Fp> c;
    for (const auto& poly : coeffs) c.push_back(poly.eval(at));
    return UniPoly<Fp>(std::move(c), coeffs.front().proto());
}

// Common zeros in P^2(F_p) of two ternary forms, via the s2-resultant
// interpolated along s0 (with s1 = 1) plus the s1 = 0 line. Fixed-degree
// Sylvester determinants keep the interpolation consistent; any degenerate
// slice just yields no candidates. Every output is an exact common zero.
inline std::vector<std::vector<Fp>> common_plane_zeros(const MultiPoly<Fp>& g1,
                                                       const MultiPoly<Fp>& g2,
                                                       std::uint64_t seed) {
    const Fp like = g1.proto();
    const std::uint64_t p = like.p;
    std::vector<std::vector<Fp>> out;
    auto push_verified = [&](Fp a, Fp b, Fp c) {
        std::vector<Fp> s = {a, b, c};
        if (is_zero(a) && is_zero(b) && is_zero(c)) return;
        if (is_zero(g1.eval(s)) && is_zero(g2.eval(s))) out.push_back(s);
    };

    auto c1 = coeffs_in_var(g1, 2);
    auto c2 = coeffs_in_var(g2, 2);
    const int d1 = static_cast<int>(c1.size()) - 1;
    const int d2 = static_cast<int>(c2.size()) - 1;
    if (d1 <= 0 || d2 <= 0) return out;

    // fixed-degree Sylvester determinant at one (s0, s1)
    auto sylv_at = [&](Fp s0, Fp s1) {
        std::vector<Fp> point = {s0, s1, Fp(0, p)};
        UniPoly<Fp> f1 = eval_coeffs(c1, point);
        UniPoly<Fp> f2 = eval_coeffs(c2, point);
        Matrix<Fp> s(static_cast<std::size_t>(d1 + d2), static_cast<std::size_t>(d1 + d2), like);
        for (int i = 0; i < d2; ++i)
            for (int j = 0; j <= d1; ++j) s.at(i, i + j) = f1.coeff(static_cast<std::size_t>(d1 - j));
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j <= d2; ++j)
                s.at(d2 + i, i + j) = f2.coeff(static_cast<std::size_t>(d2 - j));
        return s.det();
    };

    // interpolate R(s0) = Res_{s2}(g1, g2)(s0, 1) of degree <= d1*d2
    const int deg = d1 * d2;
    if (static_cast<std::uint64_t>(deg) + 1 > p) return out;
    std::vector<Fp> xs, ys;
    for (int i = 0; i <= deg; ++i) {
        xs.emplace_back(i, p);
        ys.push_back(sylv_at(Fp(i, p), Fp(1, p)));
    }
    // Newton interpolation
    std::vector<Fp> divided = ys;
    for (int lvl = 1; lvl <= deg; ++lvl)
        for (int i = deg; i >= lvl; --i)
            divided[static_cast<std::size_t>(i)] =
                (divided[static_cast<std::size_t>(i)] - divided[static_cast<std::size_t>(i - 1)]) *
                inv_of(xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - lvl)]);
    UniPoly<Fp> res = UniPoly<Fp>::constant(divided[static_cast<std::size_t>(deg)]);
    for (int i = deg - 1; i >= 0; --i) {
        res = res * (UniPoly<Fp>::x(like) - UniPoly<Fp>::constant(xs[static_cast<std::size_t>(i)]));
        res = res + UniPoly<Fp>::constant(divided[static_cast<std::size_t>(i)]);
    }

    auto finish_line = [&](Fp s0, Fp s1) {
        std::vector<Fp> point = {s0, s1, Fp(0, p)};
        UniPoly<Fp> f1 = eval_coeffs(c1, point);
        UniPoly<Fp> f2 = eval_coeffs(c2, point);
        if (f1.zero() || f2.zero()) {
            const UniPoly<Fp>& nz = f1.zero() ? f2 : f1;
            if (nz.zero()) return;  // both vanish identically: skip the whole line
            for (Fp r : fp_roots(nz, seed)) push_verified(s0, s1, r);
            return;
        }
        UniPoly<Fp> g = upoly_gcd(f1, f2);
        if (g.deg() >= 1)
            for (Fp r : fp_roots(g, seed)) push_verified(s0, s1, r);
        // s2 = 0 on this line
        push_verified(s0, s1, Fp(0, p));
    };

    if (res.zero()) {
        // the fixed-degree resultant degenerated; salvage a few lines cheaply
        Rng rng(seed);
        for (int t = 0; t < 8; ++t) finish_line(rng.fp(p), Fp(1, p));
    } else {
        for (Fp r : fp_roots(res, seed)) finish_line(r, Fp(1, p));
    }
    // the line s1 = 0
    finish_line(Fp(1, p), Fp(0, p));
    push_verified(Fp(0, p), Fp(1, p), Fp(0, p));
    push_verified(Fp(0, p), Fp(0, p), Fp(1, p));
    push_verified(Fp(1, p), Fp(0, p), Fp(0, p));

    std::sort(out.begin(), out.end(), lambda_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const std::vector<Fp>& a, const std::vector<Fp>& b) {
                              return !lambda_less(a, b) && !lambda_less(b, a);
                          }),
              out.end());
    return out;
}

inline Matrix<Fp> eval_param(const std::vector<MultiPoly<Fp>>& x, const std::vector<Fp>& s) {
    Matrix<Fp> v(x.size(), 1, x.front().proto());
    for (std::size_t i = 0; i < x.size(); ++i) v.at(i, 0) = x[i].eval(s);
    return v;
}

}  // namespace detail

// Sampled singular members of the system: roots of the discriminant along
// random lines in L, deduplicated projectively.
inline std::vector<std::vector<Fp>> sample_singular_members(const LinearSystem<Fp>& sys,
                                                            std::uint64_t seed, int lines = 12) {
    const std::uint64_t p = sys.proto().p;
    Rng rng(seed);
    std::vector<std::vector<Fp>> found;
    auto normalize = [&](std::vector<Fp> lam) {
        std::size_t lead = 0;
        while (lead < lam.size() && is_zero(lam[lead])) ++lead;
        if (lead == lam.size()) return lam;
        const Fp inv = inv_of(lam[lead]);
        for (auto& x : lam) x = x * inv;
        return lam;
    };
    for (int t = 0; t < lines; ++t) {
        std::vector<Fp> a, b;
        for (std::size_t i = 0; i < sys.m(); ++i) {
            a.push_back(rng.fp(p));
            b.push_back(rng.fp(p));
        }
        // det(A + t B_dir) as a univariate polynomial, by interpolation
        const int deg = static_cast<int>(sys.dim_v());
        std::vector<Fp> xs, ys;
        for (int i = 0; i <= deg; ++i) {
            Fp ti(i, p);
            std::vector<Fp> lam;
            for (std::size_t j = 0; j < sys.m(); ++j) lam.push_back(a[j] + ti * b[j]);
            xs.emplace_back(i, p);
            ys.push_back(sys.member(lam).det());
        }
        std::vector<Fp> divided = ys;
        for (int lvl = 1; lvl <= deg; ++lvl)
            for (int i = deg; i >= lvl; --i)
                divided[static_cast<std::size_t>(i)] =
                    (divided[static_cast<std::size_t>(i)] -
                     divided[static_cast<std::size_t>(i - 1)]) *
                    inv_of(xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - lvl)]);
        UniPoly<Fp> det_line = UniPoly<Fp>::constant(divided[static_cast<std::size_t>(deg)]);
        for (int i = deg - 1; i >= 0; --i) {
            det_line = det_line * (UniPoly<Fp>::x(sys.proto()) -
                                   UniPoly<Fp>::constant(xs[static_cast<std::size_t>(i)]));
            det_line = det_line + UniPoly<Fp>::constant(divided[static_cast<std::size_t>(i)]);
        }
        for (Fp root : fp_roots(det_line, seed ^ static_cast<std::uint64_t>(t))) {
            std::vector<Fp> lam;
            for (std::size_t j = 0; j < sys.m(); ++j) lam.push_back(a[j] + root * b[j]);
            bool nonzero = false;
            for (const auto& x : lam) nonzero |= !is_zero(x);
            if (!nonzero) continue;
            lam = normalize(lam);
            if (corank_at(sys, lam) >= 1) found.push_back(lam);
        }
    }
    std::sort(found.begin(), found.end(), detail::lambda_less);
    found.erase(std::unique(found.begin(), found.end(),
                            [](const std::vector<Fp>& a, const std::vector<Fp>& b) {
                                return !detail::lambda_less(a, b) && !detail::lambda_less(b, a);
                            }),
                found.end());
    return found;
}

// Up to `count` distinct projective points of the base locus X(F_p), each
// verified on every form and flagged for smoothness (Jacobian rank m) and
// for avoiding the radicals of the sampled singular members.
inline std::vector<BaseLocusPoint<Fp>> base_locus_sample(const LinearSystem<Fp>& sys,
                                                         std::size_t count, std::uint64_t seed,
                                                         int budget = 400) {
    const std::uint64_t p = sys.proto().p;
    const std::size_t d = sys.dim_v();
    const std::size_t m = sys.m();
    Rng rng(seed);

    std::vector<Matrix<Fp>> radicals;
    for (const auto& lam : sample_singular_members(sys, Rng::derive(seed, 0xbad)))
        radicals.push_back(sys.member(lam).kernel_basis());

    std::vector<BaseLocusPoint<Fp>> out;
    std::set<std::vector<std::uint64_t>> seen;
    auto try_accept = [&](const Matrix<Fp>& v) {
        if (v.is_zero_matrix()) return;
        for (std::size_t t = 0; t < m; ++t)
            if (!is_zero(sys.q_at(t, v))) return;
        // projective normalization for dedup
        std::size_t lead = 0;
        while (lead < d && is_zero(v.at(lead, 0))) ++lead;
        Matrix<Fp> w = v.scaled(inv_of(v.at(lead, 0)));
        std::vector<std::uint64_t> key;
        for (std::size_t i = 0; i < d; ++i) key.push_back(w.at(i, 0).v);
        if (!seen.insert(key).second) return;
        BaseLocusPoint<Fp> pt{w, false, true};
        Matrix<Fp> jac(m, d, sys.proto());
        for (std::size_t t = 0; t < m; ++t) {
            Matrix<Fp> row = sys.pairing_row(t, w).scaled(Fp(2, p));
            for (std::size_t j = 0; j < d; ++j) jac.at(t, j) = row.at(0, j);
        }
        pt.smooth = (jac.rank() == m);
        for (const auto& rad : radicals)
            if (rad.cols() > 0 && colspan_contains(rad, w)) pt.off_radicals = false;
        out.push_back(std::move(pt));
    };

    // points on the first quadric that also lie on the second: the line
    // trick gives a univariate quartic per random line
    auto sample_two = [&](const Matrix<Fp>& b1, const Matrix<Fp>& b2,
                          Rng& r) -> std::optional<Matrix<Fp>> {
        auto v0 = detail::point_on_quadric(b1, r);
        if (!v0) return std::nullopt;
        for (int t = 0; t < 30; ++t) {
            Matrix<Fp> pcols(d, 2, sys.proto());
            for (std::size_t i = 0; i < d; ++i) {
                pcols.at(i, 0) = r.fp(p);
                pcols.at(i, 1) = r.fp(p);
            }
            auto x = detail::quadric_param(b1, *v0, pcols);
            MultiPoly<Fp> f = detail::form_on_param(b2, x);  // quartic in 2 vars
            if (f.zero()) continue;
            UniPoly<Fp> u = f.dehomogenize(0);
            for (Fp root : fp_roots(u, r.next())) {
                Matrix<Fp> v = detail::eval_param(x, {root, Fp(1, p)});
                if (!v.is_zero_matrix() && is_zero(sys.q_at(1, v)))
                    return v;  // caller re-verifies everything
            }
        }
        return std::nullopt;
    };

    // points on three quadrics: parametrize the first, slice by a random
    // plane, intersect the two pulled-back quartics
    auto sample_three = [&](const Matrix<Fp>& b1, const Matrix<Fp>& b2, const Matrix<Fp>& b3,
                            Rng& r, auto&& consume) {
        auto v0 = detail::point_on_quadric(b1, r);
        if (!v0) return;
        Matrix<Fp> pcols(d, 3, sys.proto());
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < 3; ++j) pcols.at(i, j) = r.fp(p);
        auto x = detail::quadric_param(b1, *v0, pcols);
        MultiPoly<Fp> f2 = detail::form_on_param(b2, x);
        MultiPoly<Fp> f3 = detail::form_on_param(b3, x);
        if (f2.zero() || f3.zero()) return;
        for (const auto& s : detail::common_plane_zeros(f2, f3, r.next()))
            consume(detail::eval_param(x, s));
    };

    int tries = 0;
    while (out.size() < count && tries < budget) {
        ++tries;
        if (m == 2) {
            if (auto v = sample_two(sys.grams()[0], sys.grams()[1], rng)) try_accept(*v);
        } else if (m == 3) {
            sample_three(sys.grams()[0], sys.grams()[1], sys.grams()[2], rng,
                         [&](const Matrix<Fp>& v) { try_accept(v); });
        } else {
            // m = 4: find y on the first three, then rational lines through y
            // inside their intersection, then meet the fourth along each line
            std::optional<Matrix<Fp>> ycand;
            sample_three(sys.grams()[0], sys.grams()[1], sys.grams()[2], rng,
                         [&](const Matrix<Fp>& v) {
                             bool on3 = !v.is_zero_matrix();
                             for (std::size_t t = 0; t < 3 && on3; ++t)
                                 on3 &= is_zero(sys.q_at(t, v));
                             if (on3 && !ycand) ycand = v;
                         });
            if (!ycand) continue;
            const Matrix<Fp>& y = *ycand;
            if (is_zero(sys.q_at(3, y))) {
                try_accept(y);
                continue;
            }
            // directions u with pairing_t(y, u) = 0 for t = 1..3
            Matrix<Fp> rows(3, d, sys.proto());
            for (std::size_t t = 0; t < 3; ++t) {
                Matrix<Fp> row = sys.pairing_row(t, y);
                for (std::size_t j = 0; j < d; ++j) rows.at(t, j) = row.at(0, j);
            }
            Matrix<Fp> ker = rows.kernel_basis();  // d x k, contains y
            if (ker.cols() < 2) continue;
            // quotient by the y direction
            auto ycoords = ker.solve(y);
            if (!ycoords) continue;
            std::size_t ylead = 0;
            while (ylead < ker.cols() && is_zero(ycoords->at(ylead, 0))) ++ylead;
            if (ylead == ker.cols()) continue;
            Matrix<Fp> mcols(d, ker.cols() - 1, sys.proto());
            {
                std::size_t outc = 0;
                for (std::size_t c = 0; c < ker.cols(); ++c) {
                    if (c == ylead) continue;
                    for (std::size_t i = 0; i < d; ++i) mcols.at(i, outc) = ker.at(i, c);
                    ++outc;
                }
            }
            if (mcols.cols() != 4) continue;  // n = 4 is the generic web case
            // three quadrics in P^3: eliminate r3 twice, intersect in P^2
            std::vector<MultiPoly<Fp>> qt;
            for (std::size_t t = 0; t < 3; ++t) {
                Matrix<Fp> g = mcols.transpose() * sys.grams()[t] * mcols;
                MultiPoly<Fp> f(4, sys.proto());
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        f = f + (MultiPoly<Fp>::variable(4, i, sys.proto()) *
                                 MultiPoly<Fp>::variable(4, j, sys.proto()))
                                    .scaled(g.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
                qt.push_back(f);
            }
            // resultants with respect to r3 via 4x4 fixed-degree Sylvester of
            // quadratics, done symbolically over the remaining three vars
            auto res_r3 = [&](const MultiPoly<Fp>& f, const MultiPoly<Fp>& g) {
                auto cf = detail::coeffs_in_var(f, 3);
                auto cg = detail::coeffs_in_var(g, 3);
                cf.resize(3, MultiPoly<Fp>(4, sys.proto()));
                cg.resize(3, MultiPoly<Fp>(4, sys.proto()));
                // Res of a2 x^2+a1 x+a0 and b2 x^2+b1 x+b0
                const auto &a2 = cf[2], &a1 = cf[1], &a0 = cf[0];
                const auto &b2 = cg[2], &b1 = cg[1], &b0 = cg[0];
                MultiPoly<Fp> r4 = (a2 * b0 - a0 * b2) * (a2 * b0 - a0 * b2) -
                                   (a2 * b1 - a1 * b2) * (a1 * b0 - a0 * b1);
                // drop the dead fourth variable
                MultiPoly<Fp> r3(3, sys.proto());
                for (const auto& [e, c] : r4.terms())
                    r3.add_term({e[0], e[1], e[2]}, c);
                return r3;
            };
            MultiPoly<Fp> curve_a = res_r3(qt[0], qt[1]);
            MultiPoly<Fp> curve_b = res_r3(qt[0], qt[2]);
            if (curve_a.zero() || curve_b.zero()) continue;
            for (const auto& s012 : detail::common_plane_zeros(curve_a, curve_b, rng.next())) {
                // recover r3 from the gcd of the three restricted quadratics
                std::vector<Fp> full = {s012[0], s012[1], s012[2], Fp(0, p)};
                UniPoly<Fp> u1 = detail::eval_coeffs(detail::coeffs_in_var(qt[0], 3), full);
                UniPoly<Fp> u2 = detail::eval_coeffs(detail::coeffs_in_var(qt[1], 3), full);
                UniPoly<Fp> u3 = detail::eval_coeffs(detail::coeffs_in_var(qt[2], 3), full);
                UniPoly<Fp> g = upoly_gcd(upoly_gcd(u1, u2), u3);
                std::vector<Fp> r3roots;
                if (g.zero())
                    r3roots.push_back(Fp(0, p));  // any value; verification filters
                else if (g.deg() >= 1)
                    r3roots = fp_roots(g, rng.next());
                else
                    continue;
                for (Fp r3 : r3roots) {
                    Matrix<Fp> rvec(4, 1, sys.proto());
                    rvec.at(0, 0) = s012[0];
                    rvec.at(1, 0) = s012[1];
                    rvec.at(2, 0) = s012[2];
                    rvec.at(3, 0) = r3;
                    Matrix<Fp> u = mcols * rvec;
                    if (u.is_zero_matrix()) continue;
                    // the line y + s u meets the fourth quadric where a
                    // binary quadratic vanishes
                    const Fp a = sys.q_at(3, u);
                    const Fp b = Fp(2, p) * (y.transpose() * sys.grams()[3] * u).at(0, 0);
                    const Fp c = sys.q_at(3, y);
                    std::vector<Fp> sroots;
                    if (is_zero(a)) {
                        if (!is_zero(b)) sroots.push_back((zero_like(c) - c) * inv_of(b));
                    } else if (auto root = fp_sqrt(b * b - Fp(4, p) * a * c)) {
                        sroots.push_back((*root - b) * inv_of(Fp(2, p) * a));
                        sroots.push_back((zero_like(*root) - *root - b) * inv_of(Fp(2, p) * a));
                    }
                    for (Fp sv : sroots) try_accept(y + u.scaled(sv));
                }
            }
        }
    }
    if (out.size() > count) out.resize(count);
    return out;
}

// ===========================================================================
// Fiberwise exactness of the Koszul-dual complex at points of X: ranks of
// left multiplication by v on the graded pieces, with the identity
// rank(d_k) + rank(d_{k-1}) = dim Γ(A_k|_L) at interior degrees.
// ===========================================================================

struct ComplexReport {
    std::vector<std::uint64_t> dims;    // dim Γ(A_k|_L), k = 0..k_max+1
    std::vector<std::size_t> ranks;     // rank d_k, k = 0..k_max
    std::vector<bool> identity_ok;      // index k = 1..k_max stored at [k]
    bool d0_injective{false};

    bool exact() const {
        if (!d0_injective) return false;
        for (std::size_t k = 1; k < identity_ok.size(); ++k)
            if (!identity_ok[k]) return false;
        return true;
    }
};

namespace detail {

// rank of left multiplication by e_0 from degree k to k+1, by eliminating
// the wedge pivots first: columns without index 0 map bijectively onto rows
// with index 0 (coefficient 1), and the Schur complement collects what the
// contraction leaves on the remaining block. Exact for any system; when
// q_t(e_0) = 0 for all t the complement is the obstruction to exactness.
template <ScalarField K>
std::size_t lmul_rank_pivot_split(const GradedAlgebra<K>& alg, int k) {
    const std::size_t dv = alg.dim_v();
    const std::size_t m = alg.m();
    const K like = alg.proto();

    const auto dom = graded_piece_basis(dv, m, k);
    const auto cod = graded_piece_basis(dv, m, k + 1);
    std::vector<GradedKey> x1, x2;  // columns without / with index 0
    for (GradedKey kk : dom)
        ((key_subset(kk) & 1u) ? x2 : x1).push_back(kk);
    std::map<GradedKey, std::size_t> y2_index;  // rows without index 0
    {
        std::size_t i = 0;
        for (GradedKey kk : cod)
            if (!(key_subset(kk) & 1u)) y2_index.emplace(kk, i++);
    }
    std::map<GradedKey, std::size_t> x1_index;  // rows with index 0 <-> x1 columns
    for (std::size_t i = 0; i < x1.size(); ++i) x1_index.emplace(x1[i], i);

    // contraction part of e_0 acting on a monomial: i -> (S \ i, α + e_t)
    // with coefficient ± B_t(0, i)
    auto contraction = [&](GradedKey kk, auto&& emit) {
        const std::uint32_t s = key_subset(kk);
        std::uint32_t rest = s;
        int pos = 0;
        while (rest) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            for (std::size_t t = 0; t < m; ++t) {
                const K& b0i = alg.gram(t).at(0, static_cast<std::size_t>(i));
                if (!is_zero(b0i)) {
                    K v = (pos & 1) ? zero_like(b0i) - b0i : b0i;
                    emit(key_bump_alpha(kk & ~static_cast<GradedKey>(1u << i), static_cast<int>(t)), v);
                }
            }
            ++pos;
        }
    };

    // Schur columns over the y2 rows, one per x2 column
    std::vector<std::map<std::size_t, K>> schur(x2.size());
    bool any = false;
    for (std::size_t j = 0; j < x2.size(); ++j) {
        auto& col = schur[j];
        auto add = [&](std::size_t row, const K& val) {
            auto it = col.find(row);
            if (it == col.end()) {
                if (!is_zero(val)) col.emplace(row, val);
            } else {
                it->second = it->second + val;
                if (is_zero(it->second)) col.erase(it);
            }
        };
        // direct block: contraction of an x2 column landing in y2 (only the
        // removal of index 0 itself, coefficient ± B_t(0,0))
        contraction(x2[j], [&](GradedKey target, const K& val) {
            if (key_subset(target) & 1u) {
                // lands in y1: handled through the pivot block below
                auto it = x1_index.find(target & ~static_cast<GradedKey>(1u));
                if (it == x1_index.end()) throw Error("pivot split: missing wedge partner");
                // subtract C(A^{-1} e) where A is the identity on matched keys
                contraction(x1[it->second], [&](GradedKey t2, const K& v2) {
                    if (key_subset(t2) & 1u) throw Error("pivot split: x1 contraction hit y1");
                    add(y2_index.at(t2), zero_like(v2) - (v2 * val));
                });
            } else {
                add(y2_index.at(target), val);
            }
        });
        any |= !col.empty();
    }

    std::size_t schur_rank = 0;
    if (any) {
        // collect touched rows and do a dense exact elimination on the block
        std::map<std::size_t, std::size_t> rowmap;
        for (const auto& col : schur)
            for (const auto& [r, v] : col) rowmap.emplace(r, 0);
        std::size_t idx = 0;
        for (auto& [r, slot] : rowmap) slot = idx++;
        Matrix<K> dense(rowmap.size(), x2.size(), like);
        for (std::size_t j = 0; j < x2.size(); ++j)
            for (const auto& [r, v] : schur[j]) dense.at(rowmap.at(r), j) = v;
        schur_rank = dense.rank();
    }
    return x1.size() + schur_rank;
}

}  // namespace detail

// Dense matrix rank of d_k, for cross-checks and small cases.
template <ScalarField K>
std::size_t lmul_rank_dense(const GradedAlgebraPtr<K>& alg, const Matrix<K>& v, int k) {
    return graded_lmul_matrix(alg, v, k).rank();
}

// Exactness report for the complex ... -> Γ(A_k|_L) -> Γ(A_{k+1}|_L) -> ...
// given by multiplication by v, for a point v of the base locus.
template <ScalarField K>
ComplexReport clifford_complex_exact_at(const LinearSystem<K>& sys, const Matrix<K>& v,
                                        int k_max) {
    for (std::size_t t = 0; t < sys.m(); ++t)
        if (!is_zero(sys.q_at(t, v)))
            throw OperationalError("clifford_complex_exact_at: v is not on the base locus");
    if (v.is_zero_matrix()) throw OperationalError("clifford_complex_exact_at: v = 0");

    // change coordinates so v becomes the first basis vector; the ranks are
    // invariant under the induced isomorphism of graded algebras
    const std::size_t d = sys.dim_v();
    Matrix<K> tmat(d, d, sys.proto());
    {
        IncrementalSpan<K> span(d, sys.proto());
        span.insert(v);
        for (std::size_t i = 0; i < d; ++i) tmat.at(i, 0) = v.at(i, 0);
        std::size_t col = 1;
        for (std::size_t i = 0; i < d && col < d; ++i) {
            Matrix<K> e(d, 1, sys.proto());
            e.at(i, 0) = one_like(sys.proto());
            if (span.insert(e)) {
                for (std::size_t r = 0; r < d; ++r) tmat.at(r, col) = e.at(r, 0);
                ++col;
            }
        }
        if (col != d) throw Error("clifford_complex_exact_at: basis completion failed");
    }
    std::vector<Matrix<K>> transformed;
    for (const auto& b : sys.grams()) transformed.push_back(tmat.transpose() * b * tmat);
    GradedAlgebra<K> alg(transformed);

    ComplexReport rep;
    for (int k = 0; k <= k_max + 1; ++k) rep.dims.push_back(graded_piece_dim(d, sys.m(), k));
    for (int k = 0; k <= k_max; ++k) rep.ranks.push_back(detail::lmul_rank_pivot_split(alg, k));
    rep.d0_injective = (rep.ranks[0] == rep.dims[0]);
    rep.identity_ok.assign(static_cast<std::size_t>(k_max) + 1, true);
    for (int k = 1; k <= k_max; ++k)
        rep.identity_ok[static_cast<std::size_t>(k)] =
            (rep.ranks[static_cast<std::size_t>(k)] + rep.ranks[static_cast<std::size_t>(k - 1)] ==
             rep.dims[static_cast<std::size_t>(k)]);
    return rep;
}

}  // namespace quadspin

#endif
