#ifndef QUADSPIN_QUADSPACE_HPP
#define QUADSPIN_QUADSPACE_HPP

#include <memory>
#include <optional>
#include <vector>

#include "quadspin/matrix.hpp"
#include "quadspin/rng.hpp"

namespace quadspin {

// Hyperbolic frame of a quadratic space, in the space's own coordinates:
// columns are e_1 f_1 ... e_k f_k | anisotropic part | radical, with
// pairing(e_i, f_i) = 1 and everything else between frame vectors zero
// except within the anisotropic block.
template <ScalarField K>
struct SplitFrame {
    Matrix<K> vectors;  // 2n x 2n, columns as above
    std::size_t pairs{0};
    std::size_t aniso{0};
    std::size_t radical{0};

    Matrix<K> e(std::size_t i) const { return vectors.col(2 * i); }
    Matrix<K> f(std::size_t i) const { return vectors.col(2 * i + 1); }
    Matrix<K> rad(std::size_t i) const { return vectors.col(2 * pairs + aniso + i); }
};

// A 2n-dimensional space with a symmetric Gram matrix B; q(v) = v^T B v and
// pairing(u, v) = u^T B v, so q(v) = pairing(v, v) and 2 must be invertible.
// Spaces built by the split constructors remember a frame, which is what
// makes isotropic subspaces available over Q.
template <ScalarField K>
class QuadraticSpace {
public:
    explicit QuadraticSpace(Matrix<K> gram, std::optional<SplitFrame<K>> frame = std::nullopt)
        : gram_(std::move(gram)), frame_(std::move(frame)) {
        const std::size_t d = gram_.rows();
        if (d != gram_.cols() || d % 2 != 0 || d < 4 || d > 8)
            throw OperationalError("QuadraticSpace: dimension must be even, between 4 and 8");
        if (!(gram_ == gram_.transpose()))
            throw OperationalError("QuadraticSpace: Gram matrix must be symmetric");
    }

    std::size_t dim() const { return gram_.rows(); }
    std::size_t n() const { return dim() / 2; }
    const Matrix<K>& gram() const { return gram_; }
    const std::optional<SplitFrame<K>>& frame() const { return frame_; }
    const K& proto() const { return gram_.proto(); }

    K q(const Matrix<K>& v) const {  // v is a 2n x 1 column
        return (v.transpose() * gram_ * v).at(0, 0);
    }
    K pairing(const Matrix<K>& u, const Matrix<K>& v) const {
        return (u.transpose() * gram_ * v).at(0, 0);
    }

private:
    Matrix<K> gram_;
    std::optional<SplitFrame<K>> frame_;
};

template <ScalarField K>
using SpacePtr = std::shared_ptr<const QuadraticSpace<K>>;

template <ScalarField K>
bool same_space(const QuadraticSpace<K>& a, const QuadraticSpace<K>& b) {
    return &a == &b || a.gram() == b.gram();
}

template <ScalarField K>
std::size_t corank(const QuadraticSpace<K>& q) {
    return q.dim() - q.gram().rank();
}

// Columns span the radical ker(B); empty for nondegenerate forms.
template <ScalarField K>
Matrix<K> radical_basis(const QuadraticSpace<K>& q) {
    return q.gram().kernel_basis();
}

// ---------------------------------------------------------------------------
// Isotropic subspaces. Bases are stored as rows; construction verifies both
// invariants exactly (independence and basis * B * basis^T = 0, which covers
// q(w_i) = 0 and pairing(w_i, w_j) = 0 at once).
// ---------------------------------------------------------------------------

template <ScalarField K>
class IsotropicSubspace {
public:
    IsotropicSubspace(SpacePtr<K> space, Matrix<K> basis_rows)
        : space_(std::move(space)), basis_(std::move(basis_rows)) {
        if (basis_.cols() != space_->dim())
            throw OperationalError("IsotropicSubspace: basis width != dim V");
        if (basis_.rank() != basis_.rows())
            throw OperationalError("IsotropicSubspace: basis rows are dependent");
        Matrix<K> g = basis_ * space_->gram() * basis_.transpose();
        if (!g.is_zero_matrix())
            throw OperationalError("IsotropicSubspace: subspace is not isotropic");
    }

    const SpacePtr<K>& space() const { return space_; }
    const Matrix<K>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.rows(); }
    Matrix<K> vec(std::size_t i) const { return basis_.row(i).transpose(); }  // column vector

private:
    SpacePtr<K> space_;
    Matrix<K> basis_;
};

// dim(W ∩ W') for two subspaces given by row bases.
template <ScalarField K>
std::size_t subspace_meet_dim(const Matrix<K>& a, const Matrix<K>& b) {
    return colspan_meet_dim(a.transpose(), b.transpose());
}

template <ScalarField K>
bool subspace_contains(const Matrix<K>& big, const Matrix<K>& small) {
    return colspan_contains(big.transpose(), small.transpose());
}

// ---------------------------------------------------------------------------
// Hyperbolic splitting. Deterministic: candidate isotropic vectors are tried
// in a fixed order (standard basis, sums and differences of pairs, then a
// fixed-seed pseudorandom stream with one coordinate solved by a square
// root). Over Q this succeeds only for forms that happen to split along the
// search path; callers that need rational isotropics should construct spaces
// through the split factories below, which record a frame.
// ---------------------------------------------------------------------------

namespace detail {

// Isotropic vector of the nondegenerate form G restricted to colspan(C),
// expressed in ambient coordinates. Returns nullopt when none is found
// (anisotropic plane over F_p, or a rational form the search cannot crack).
template <ScalarField K>
std::optional<Matrix<K>> isotropic_vector(const Matrix<K>& gram, const Matrix<K>& basis) {
    const std::size_t d = basis.cols();
    const K like = gram.proto();
    auto qform = [&](const Matrix<K>& v) { return (v.transpose() * gram * v).at(0, 0); };
    auto pair2 = [&](const Matrix<K>& u, const Matrix<K>& v) {
        return (u.transpose() * gram * v).at(0, 0);
    };
    for (std::size_t i = 0; i < d; ++i)
        if (is_zero(qform(basis.col(i)))) return basis.col(i);

    // solve q(u + t w) = 0 on lines through pairs of basis vectors, then on
    // pseudorandom lines
    auto try_line = [&](const Matrix<K>& u, const Matrix<K>& w) -> std::optional<Matrix<K>> {
        const K a = qform(w);
        const K b = pair2(u, w) + pair2(w, u);  // == 2 pairing(u,w)
        const K c = qform(u);
        if (is_zero(a)) {
            if (is_zero(b)) return std::nullopt;
            // t = -c / b
            Matrix<K> v = u + w.scaled(zero_like(like) - c * inv_of(b));
            return v;
        }
        if constexpr (std::is_same_v<K, Fp>) {
            const K disc = b * b - int_like(like, 4) * a * c;
            auto root = fp_sqrt(disc);
            if (!root) return std::nullopt;
            const K t = (*root - b) * inv_of(int_like(like, 2) * a);
            return u + w.scaled(t);
        } else {
            // rational square roots are out of reach here
            (void)a;
            return std::nullopt;
        }
    };

    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            if (auto v = try_line(basis.col(i), basis.col(j))) return v;
            if (auto v = try_line(basis.col(i), basis.col(j).negated())) return v;
        }
    if constexpr (std::is_same_v<K, Fp>) {
        Rng rng(0xd15c0);
        const std::uint64_t p = like.p;
        for (int trial = 0; trial < 256; ++trial) {
            Matrix<K> u(basis.rows(), 1, like), w(basis.rows(), 1, like);
            for (std::size_t i = 0; i < d; ++i) {
                Matrix<K> ci = basis.col(i);
                u = u + ci.scaled(rng.fp(p));
                w = w + ci.scaled(rng.fp(p));
            }
            if (u.is_zero_matrix() || w.is_zero_matrix()) continue;
            if (auto v = try_line(u, w)) {
                if (!v->is_zero_matrix()) return v;
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Splits off hyperbolic planes until only an anisotropic kernel-free core and
// the radical remain. Works on a raw symmetric Gram matrix of any dimension
// (quotient forms are odd-dimensional). Throws NotSupportedError over Q when
// no isotropic vector can be produced.
template <ScalarField K>
SplitFrame<K> hyperbolic_split_gram(const Matrix<K>& B) {
    const std::size_t d = B.rows();
    const K like = B.proto();
    const K two = int_like(like, 2);
    auto qf = [&](const Matrix<K>& v) { return (v.transpose() * B * v).at(0, 0); };
    auto pf = [&](const Matrix<K>& u, const Matrix<K>& v) {
        return (u.transpose() * B * v).at(0, 0);
    };

    Matrix<K> rad = B.kernel_basis();  // d x c
    // complement of the radical: greedily add standard basis vectors
    Matrix<K> comp(d, 0, like);
    {
        Matrix<K> acc = rad;
        for (std::size_t i = 0; i < d && acc.cols() < d; ++i) {
            Matrix<K> cand(d, 1, like);
            cand.at(i, 0) = one_like(like);
            Matrix<K> trial = Matrix<K>::hstack(acc, cand);
            if (trial.rank() == acc.cols() + 1) {
                acc = trial;
                comp = Matrix<K>::hstack(comp, cand);
            }
        }
    }

    std::vector<Matrix<K>> es, fs;
    Matrix<K> cur = comp;
    while (cur.cols() >= 2) {
        auto v = detail::isotropic_vector(B, cur);
        if (!v) break;
        // hyperbolic partner: u with pairing(v, u) != 0
        std::optional<Matrix<K>> partner;
        for (std::size_t i = 0; i < cur.cols(); ++i) {
            K pv = pf(*v, cur.col(i));
            if (!is_zero(pv)) {
                partner = cur.col(i).scaled(inv_of(pv));
                break;
            }
        }
        if (!partner) throw Error("hyperbolic_split: degenerate restriction");
        Matrix<K> w = *partner;
        w = w - v->scaled(qf(w) * inv_of(two));  // make the partner isotropic
        es.push_back(*v);
        fs.push_back(w);
        // orthogonal complement of the plane inside cur
        Matrix<K> next(d, 0, like);
        for (std::size_t i = 0; i < cur.cols(); ++i) {
            Matrix<K> r = cur.col(i);
            r = r - v->scaled(pf(r, w)) - w.scaled(pf(r, *v));
            Matrix<K> trial = Matrix<K>::hstack(next, r);
            if (trial.rank() == next.cols() + 1) next = trial;
        }
        if (next.cols() + 2 != cur.cols()) throw Error("hyperbolic_split: dimension bookkeeping");
        cur = next;
    }

    if constexpr (std::is_same_v<K, Rat>) {
        if (cur.cols() > 2 || (cur.cols() == 2 && detail::isotropic_vector(B, cur)))
            throw NotSupportedError(
                "hyperbolic_split: cannot find rational isotropic vectors for this form");
    }

    SplitFrame<K> fr{Matrix<K>(d, d, like), es.size(), cur.cols(), rad.cols()};
    std::size_t col = 0;
    for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t r = 0; r < d; ++r) fr.vectors.at(r, col) = es[i].at(r, 0);
        ++col;
        for (std::size_t r = 0; r < d; ++r) fr.vectors.at(r, col) = fs[i].at(r, 0);
        ++col;
    }
    for (std::size_t i = 0; i < cur.cols(); ++i, ++col)
        for (std::size_t r = 0; r < d; ++r) fr.vectors.at(r, col) = cur.at(r, i);
    for (std::size_t i = 0; i < rad.cols(); ++i, ++col)
        for (std::size_t r = 0; r < d; ++r) fr.vectors.at(r, col) = rad.at(r, i);
    if (fr.vectors.rank() != d) throw Error("hyperbolic_split: frame not invertible");
    return fr;
}

template <ScalarField K>
SplitFrame<K> hyperbolic_split(const QuadraticSpace<K>& space) {
    return hyperbolic_split_gram(space.gram());
}

// ---------------------------------------------------------------------------
// Maximal isotropic subspaces and the two families.
// ---------------------------------------------------------------------------

// An isotropic subspace of dimension `want` (default n) containing the whole
// radical when corank >= 1. The two hint values give representatives of the
// two families when the image in V/rad is a maximal isotropic of an
// even-dimensional quotient.
template <ScalarField K>
IsotropicSubspace<K> max_isotropic_basis(const SpacePtr<K>& space, int family_hint,
                                         std::size_t want = 0) {
    const std::size_t n = space->n();
    if (want == 0) want = n;
    const std::size_t c = corank(*space);
    if (c > 0 && want < c)
        throw OperationalError("max_isotropic_basis: radical does not fit in requested dim");

    SplitFrame<K> fr;
    if (space->frame())
        fr = *space->frame();
    else if constexpr (std::is_same_v<K, Fp>)
        fr = hyperbolic_split(*space);
    else
        throw NotSupportedError(
            "max_isotropic_basis: rational forms need an explicit hyperbolic presentation");

    const std::size_t from_pairs = want - c;
    if (from_pairs > fr.pairs)
        throw NotSupportedError("max_isotropic_basis: form is not split enough (Witt index " +
                                std::to_string(fr.pairs) + ", need " + std::to_string(from_pairs) +
                                ")");

    Matrix<K> rows(want, space->dim(), space->proto());
    std::size_t r = 0;
    for (std::size_t i = 0; i < c; ++i, ++r)
        for (std::size_t j = 0; j < space->dim(); ++j) rows.at(r, j) = fr.rad(i).at(j, 0);
    for (std::size_t i = 0; i < from_pairs; ++i, ++r) {
        const bool swap_last = (family_hint % 2 == 1) && (i + 1 == from_pairs);
        Matrix<K> v = swap_last ? fr.f(i) : fr.e(i);
        for (std::size_t j = 0; j < space->dim(); ++j) rows.at(r, j) = v.at(j, 0);
    }
    return IsotropicSubspace<K>(space, rows);
}

// An n-dimensional isotropic subspace whose intersection with the radical
// has the prescribed dimension; the remaining directions come from the
// hyperbolic pairs, with the hint choosing the family of the image in V/rad.
// meet = min(corank, 1) is the configuration whose image in V/rad is a
// maximal isotropic there (the one the moduli problem cares about).
template <ScalarField K>
IsotropicSubspace<K> isotropic_with_radical_meet(const SpacePtr<K>& space, int family_hint,
                                                 std::size_t meet) {
    const std::size_t n = space->n();
    const std::size_t c = corank(*space);
    if (meet > c) throw OperationalError("isotropic_with_radical_meet: meet exceeds corank");
    SplitFrame<K> fr;
    if (space->frame())
        fr = *space->frame();
    else if constexpr (std::is_same_v<K, Fp>)
        fr = hyperbolic_split(*space);
    else
        throw NotSupportedError(
            "isotropic_with_radical_meet: rational forms need an explicit presentation");
    const std::size_t from_pairs = n - meet;
    if (from_pairs > fr.pairs)
        throw NotSupportedError("isotropic_with_radical_meet: form is not split enough");
    Matrix<K> rows(n, space->dim(), space->proto());
    std::size_t r = 0;
    for (std::size_t i = 0; i < meet; ++i, ++r)
        for (std::size_t j = 0; j < space->dim(); ++j) rows.at(r, j) = fr.rad(i).at(j, 0);
    for (std::size_t i = 0; i < from_pairs; ++i, ++r) {
        const bool swap_last = (family_hint % 2 == 1) && (i + 1 == from_pairs);
        Matrix<K> v = swap_last ? fr.f(i) : fr.e(i);
        for (std::size_t j = 0; j < space->dim(); ++j) rows.at(r, j) = v.at(j, 0);
    }
    return IsotropicSubspace<K>(space, rows);
}

// The classical parity test: maximal isotropics of a nondegenerate space lie
// in the same family iff dim(W ∩ W') ≡ n (mod 2).
template <ScalarField K>
bool same_family(const IsotropicSubspace<K>& w, const IsotropicSubspace<K>& w2) {
    if (!same_space(*w.space(), *w2.space()))
        throw OperationalError("same_family: different quadratic spaces");
    if (corank(*w.space()) != 0)
        throw OperationalError("same_family: space must be nondegenerate");
    const std::size_t n = w.space()->n();
    if (w.dim() != n || w2.dim() != n)
        throw OperationalError("same_family: both subspaces must be maximal (dim n)");
    const std::size_t meet = subspace_meet_dim(w.basis(), w2.basis());
    return (meet % 2) == (n % 2);
}

// ---------------------------------------------------------------------------
// The invariant that classifies spinor sheaves on quadrics of corank <= 2:
// dim(W ∩ rad q) plus, when the image of W in V/rad is maximal isotropic
// there, the family of that image measured against a deterministic reference.
// ---------------------------------------------------------------------------

struct SpinorInvariant {
    std::size_t radical_meet_dim{0};
    std::optional<int> family_bit;

    friend bool operator==(const SpinorInvariant& a, const SpinorInvariant& b) {
        return a.radical_meet_dim == b.radical_meet_dim && a.family_bit == b.family_bit;
    }
};

template <ScalarField K>
SpinorInvariant spinor_invariant(const IsotropicSubspace<K>& w) {
    const QuadraticSpace<K>& Q = *w.space();
    const std::size_t c = corank(Q);
    if (c > 2) throw OperationalError("spinor_invariant: corank > 2 is not classified");
    const K like = Q.proto();
    const std::size_t d = Q.dim();

    SpinorInvariant inv;
    Matrix<K> rad = radical_basis(Q);  // d x c
    inv.radical_meet_dim = colspan_meet_dim(rad, w.basis().transpose());

    // quotient V/rad: complement spanned by standard basis vectors
    Matrix<K> comp(d, 0, like);
    {
        Matrix<K> acc = rad;
        for (std::size_t i = 0; i < d && acc.cols() < d; ++i) {
            Matrix<K> cand(d, 1, like);
            cand.at(i, 0) = one_like(like);
            Matrix<K> trial = Matrix<K>::hstack(acc, cand);
            if (trial.rank() == acc.cols() + 1) {
                acc = trial;
                comp = Matrix<K>::hstack(comp, cand);
            }
        }
    }
    const std::size_t dq = d - c;
    Matrix<K> qgram = comp.transpose() * Q.gram() * comp;  // induced form on V/rad

    // image of W in quotient coordinates
    Matrix<K> basis_full = Matrix<K>::hstack(rad, comp);  // invertible
    auto coords = basis_full.solve(w.basis().transpose());
    if (!coords) throw Error("spinor_invariant: quotient coordinates failed");
    Matrix<K> image = coords->submatrix(c, 0, dq, coords->cols());  // dq x m, columns
    auto ech = image.transpose().rref();
    Matrix<K> image_basis(dq, ech.rank, like);
    for (std::size_t r = 0; r < ech.rank; ++r)
        for (std::size_t i = 0; i < dq; ++i) image_basis.at(i, r) = ech.reduced.at(r, i);

    const std::size_t max_dim = dq / 2;  // floor; odd quotients have one family
    if (image_basis.cols() != max_dim) return inv;  // not maximal: no family label

    if (dq % 2 == 1) {
        inv.family_bit = 0;
        return inv;
    }
    // reference maximal isotropic of the quotient, from the deterministic split
    SplitFrame<K> fr = hyperbolic_split_gram(qgram);
    if (fr.pairs != max_dim) {
        // quotient not split, yet W maps onto a maximal isotropic: impossible
        throw Error("spinor_invariant: split/maximality contradiction");
    }
    Matrix<K> ref(dq, max_dim, like);
    for (std::size_t i = 0; i < max_dim; ++i)
        for (std::size_t r = 0; r < dq; ++r) ref.at(r, i) = fr.e(i).at(r, 0);
    const std::size_t meet = colspan_meet_dim(ref, image_basis);
    inv.family_bit = static_cast<int>((max_dim - meet) % 2);
    return inv;
}

// ---------------------------------------------------------------------------
// Random generation. Deterministic in the seed.
// ---------------------------------------------------------------------------

template <ScalarField K>
Matrix<K> random_symmetric_gram(std::size_t d, Rng& rng, const K& like) {
    Matrix<K> b(d, d, like);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            K x = random_scalar(rng, like);
            b.at(i, j) = x;
            b.at(j, i) = x;
        }
    return b;
}

template <ScalarField K>
QuadraticSpace<K> random_quadratic_space(std::size_t n, const K& like, std::uint64_t seed) {
    if (n < 2 || n > 4) throw OperationalError("random_quadratic_space: n must be 2, 3 or 4");
    Rng rng(seed);
    return QuadraticSpace<K>(random_symmetric_gram(2 * n, rng, like));
}

template <ScalarField K>
std::vector<QuadraticSpace<K>> random_system(std::size_t n, std::size_t m, const K& like,
                                             std::uint64_t seed) {
    if (m < 2 || m > 4) throw OperationalError("random_system: m must be 2, 3 or 4");
    if (n < 2 || n > 4) throw OperationalError("random_system: n must be 2, 3 or 4");
    std::vector<QuadraticSpace<K>> out;
    for (std::size_t t = 0; t < m; ++t)
        out.push_back(random_quadratic_space<K>(n, like, Rng::derive(seed, t)));
    return out;
}

// Random invertible change of basis with entries from the usual ranges,
// together with its inverse.
template <ScalarField K>
std::pair<Matrix<K>, Matrix<K>> random_invertible(std::size_t d, Rng& rng, const K& like) {
    for (;;) {
        Matrix<K> u(d, d, like);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) u.at(i, j) = random_scalar(rng, like);
        auto inv = u.inverse();
        if (inv) return {u, *inv};
    }
}

// A split form of the given corank: the standard hyperbolic ⊕ 0^c Gram
// conjugated by a random basis change, with the transported frame recorded.
template <ScalarField K>
QuadraticSpace<K> random_split_space(std::size_t n, std::size_t crk, const K& like,
                                     std::uint64_t seed) {
    if (n < 2 || n > 4) throw OperationalError("random_split_space: n must be 2, 3 or 4");
    if (crk > 2) throw OperationalError("random_split_space: corank must be <= 2");
    const std::size_t d = 2 * n;
    const std::size_t pairs = (d - crk) / 2;
    const std::size_t aniso = (d - crk) % 2;
    Matrix<K> h(d, d, like);
    for (std::size_t i = 0; i < pairs; ++i) {
        h.at(2 * i, 2 * i + 1) = one_like(like);
        h.at(2 * i + 1, 2 * i) = one_like(like);
    }
    if (aniso) h.at(2 * pairs, 2 * pairs) = one_like(like);

    Rng rng(seed);
    auto [u, uinv] = random_invertible<K>(d, rng, like);
    // with B = U^T H U the standard frame transports through U^{-1}
    Matrix<K> gram = u.transpose() * h * u;
    SplitFrame<K> fr{uinv, pairs, aniso, crk};
    return QuadraticSpace<K>(gram, fr);
}

// Reflection in an anisotropic vector r: x - (pairing(r,x)/q(r)) * 2r.
// Products of an even number of these preserve each family of maximal
// isotropics and fix the radical pointwise.
template <ScalarField K>
Matrix<K> reflection_matrix(const QuadraticSpace<K>& space, const Matrix<K>& r) {
    const K qr = space.q(r);
    if (is_zero(qr)) throw OperationalError("reflection_matrix: isotropic axis");
    const std::size_t d = space.dim();
    Matrix<K> m = Matrix<K>::identity(d, space.proto());
    Matrix<K> br = space.gram() * r;  // pairing(r, .) as a column
    const K s = int_like(space.proto(), 2) * inv_of(qr);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m.at(i, j) = m.at(i, j) - r.at(i, 0) * br.at(j, 0) * s;
    return m;
}

template <ScalarField K>
Matrix<K> random_even_isometry(const QuadraticSpace<K>& space, Rng& rng, int reflections = 2) {
    if (reflections % 2 != 0) throw OperationalError("random_even_isometry: even count required");
    const std::size_t d = space.dim();
    Matrix<K> m = Matrix<K>::identity(d, space.proto());
    int done = 0;
    while (done < reflections) {
        Matrix<K> r(d, 1, space.proto());
        for (std::size_t i = 0; i < d; ++i) r.at(i, 0) = random_scalar(rng, space.proto());
        if (r.is_zero_matrix() || is_zero(space.q(r))) continue;
        m = reflection_matrix(space, r) * m;
        ++done;
    }
    return m;
}

}  // namespace quadspin

#endif
