#ifndef QUADSPIN_SPINOR_HPP
#define QUADSPIN_SPINOR_HPP

#include <array>
#include <string>

#include "quadspin/clifford.hpp"

namespace quadspin {

// ===========================================================================
// Spinor ideals I = Cl·w₁⋯w_m and their matrix factorizations.
// ===========================================================================

// Index maps between parity-homogeneous subsets and half-space coordinates.
struct ParityIndex {
    std::vector<std::uint32_t> subsets;  // ascending bitmasks of one parity
    std::vector<std::size_t> index_of;   // 2^d entries, only parity slots valid

    static ParityIndex make(std::size_t dim, int parity) {
        ParityIndex pi;
        pi.index_of.assign(std::size_t{1} << dim, SIZE_MAX);
        for (std::uint32_t s = 0; s < (1u << dim); ++s)
            if (subset_parity(s) == parity) {
                pi.index_of[s] = pi.subsets.size();
                pi.subsets.push_back(s);
            }
        return pi;
    }
};

template <ScalarField K>
Matrix<K> half_coords(const CliffordElement<K>& x, const ParityIndex& pi) {
    Matrix<K> v(pi.subsets.size(), 1, x.space()->proto());
    for (const auto& [s, c] : x.coeffs()) {
        if (pi.index_of[s] == SIZE_MAX)
            throw Error("half_coords: element is not parity homogeneous");
        v.at(pi.index_of[s], 0) = c;
    }
    return v;
}

template <ScalarField K>
CliffordElement<K> element_from_full_coords(const SpacePtr<K>& space, const Matrix<K>& v) {
    CliffordElement<K> e(space);
    for (std::uint32_t s = 0; s < v.rows(); ++s) e.add(s, v.at(s, 0));
    return e;
}

// The left ideal I = Cl·ω with ω = w₁⋯w_m. Both graded pieces are spanned by
// the products e_S·ω; each stored basis column is such a product and carries
// its witness subset S. The whole right-multiplication action x ↦ x·ω in the
// 2^{2n} monomial coordinates is kept as well (annihilator and hom
// computations run off it).
template <ScalarField K>
class SpinorIdeal {
public:
    explicit SpinorIdeal(IsotropicSubspace<K> w) : w_(std::move(w)), omega_(w_.space()) {
        const auto& space = w_.space();
        const std::size_t d = space->dim();
        if (w_.dim() < 1 || w_.dim() > space->n() + 1)
            throw OperationalError("SpinorIdeal: need 1 <= dim W <= n+1");
        omega_ = isotropic_volume(w_);
        if (omega_.zero()) throw Error("SpinorIdeal: omega vanished for independent W");

        even_index_ = ParityIndex::make(d, 0);
        odd_index_ = ParityIndex::make(d, 1);
        const std::size_t full = std::size_t{1} << d;
        action_ = Matrix<K>(full, full, space->proto());

        // incremental echelon per parity to pick independent products
        IncrementalSpan<K> even_span(even_index_.subsets.size(), space->proto());
        IncrementalSpan<K> odd_span(odd_index_.subsets.size(), space->proto());
        std::vector<Matrix<K>> even_cols, odd_cols;
        std::vector<CliffordElement<K>> products = all_monomial_products(omega_);
        for (std::uint32_t s = 0; s < full; ++s) {
            const CliffordElement<K>& prod = products[s];
            for (const auto& [t, c] : prod.coeffs()) action_.at(t, s) = c;
            if (prod.zero()) continue;
            const int par = prod.parity();
            if (par < 0) throw Error("SpinorIdeal: product not parity homogeneous");
            auto& pi = (par == 0) ? even_index_ : odd_index_;
            auto& span = (par == 0) ? even_span : odd_span;
            auto& cols = (par == 0) ? even_cols : odd_cols;
            auto& wit = (par == 0) ? even_witness_ : odd_witness_;
            Matrix<K> coords = half_coords(prod, pi);
            if (span.insert(coords)) {
                cols.push_back(coords);
                wit.push_back(s);
            }
        }
        even_basis_ = Matrix<K>(even_index_.subsets.size(), even_cols.size(), space->proto());
        for (std::size_t j = 0; j < even_cols.size(); ++j)
            for (std::size_t i = 0; i < even_index_.subsets.size(); ++i)
                even_basis_.at(i, j) = even_cols[j].at(i, 0);
        odd_basis_ = Matrix<K>(odd_index_.subsets.size(), odd_cols.size(), space->proto());
        for (std::size_t j = 0; j < odd_cols.size(); ++j)
            for (std::size_t i = 0; i < odd_index_.subsets.size(); ++i)
                odd_basis_.at(i, j) = odd_cols[j].at(i, 0);
    }

    const IsotropicSubspace<K>& w() const { return w_; }
    const SpacePtr<K>& space() const { return w_.space(); }
    const CliffordElement<K>& omega() const { return omega_; }
    int omega_parity() const { return static_cast<int>(w_.dim() % 2); }

    const Matrix<K>& even_basis() const { return even_basis_; }
    const Matrix<K>& odd_basis() const { return odd_basis_; }
    const std::vector<std::uint32_t>& even_witness() const { return even_witness_; }
    const std::vector<std::uint32_t>& odd_witness() const { return odd_witness_; }
    const ParityIndex& even_index() const { return even_index_; }
    const ParityIndex& odd_index() const { return odd_index_; }
    const Matrix<K>& action() const { return action_; }  // x ↦ x·ω, full coords

    std::size_t dim_even() const { return even_basis_.cols(); }
    std::size_t dim_odd() const { return odd_basis_.cols(); }
    std::size_t dim() const { return dim_even() + dim_odd(); }

    CliffordElement<K> even_element(std::size_t j) const {
        return element_from_half(even_basis_.col(j), even_index_);
    }
    CliffordElement<K> odd_element(std::size_t j) const {
        return element_from_half(odd_basis_.col(j), odd_index_);
    }

    // basis of I (even columns then odd columns) in the full coordinates
    Matrix<K> full_basis() const {
        const std::size_t fullrows = std::size_t{1} << space()->dim();
        Matrix<K> b(fullrows, dim(), space()->proto());
        for (std::size_t j = 0; j < dim_even(); ++j)
            for (std::size_t i = 0; i < even_index_.subsets.size(); ++i)
                b.at(even_index_.subsets[i], j) = even_basis_.at(i, j);
        for (std::size_t j = 0; j < dim_odd(); ++j)
            for (std::size_t i = 0; i < odd_index_.subsets.size(); ++i)
                b.at(odd_index_.subsets[i], dim_even() + j) = odd_basis_.at(i, j);
        return b;
    }

    // basis of the parity-p part in full coordinates, with witnesses
    Matrix<K> parity_basis_full(int parity) const {
        const std::size_t fullrows = std::size_t{1} << space()->dim();
        const auto& pi = (parity == 0) ? even_index_ : odd_index_;
        const auto& hb = (parity == 0) ? even_basis_ : odd_basis_;
        Matrix<K> b(fullrows, hb.cols(), space()->proto());
        for (std::size_t j = 0; j < hb.cols(); ++j)
            for (std::size_t i = 0; i < pi.subsets.size(); ++i)
                b.at(pi.subsets[i], j) = hb.at(i, j);
        return b;
    }

private:
    CliffordElement<K> element_from_half(const Matrix<K>& v, const ParityIndex& pi) const {
        CliffordElement<K> e(space());
        for (std::size_t i = 0; i < pi.subsets.size(); ++i) e.add(pi.subsets[i], v.at(i, 0));
        return e;
    }

    IsotropicSubspace<K> w_;
    CliffordElement<K> omega_;
    ParityIndex even_index_, odd_index_;
    Matrix<K> even_basis_, odd_basis_;
    std::vector<std::uint32_t> even_witness_, odd_witness_;
    Matrix<K> action_;
};

template <ScalarField K>
SpinorIdeal<K> build_ideal(const IsotropicSubspace<K>& w) {
    return SpinorIdeal<K>(w);
}

// ===========================================================================
// The matrix factorization (φ, ψ): left multiplication by v between the two
// graded pieces, satisfying φ(v)ψ(v) = ψ(v)φ(v) = q(v)·Id.
// ===========================================================================

template <ScalarField K>
class MatrixFactorization {
public:
    explicit MatrixFactorization(SpinorIdeal<K> ideal) : ideal_(std::move(ideal)) {}

    const SpinorIdeal<K>& ideal() const { return ideal_; }

    // odd -> even component of left multiplication by v
    Matrix<K> phi_of(const Matrix<K>& v) const { return lmul_matrix(v, 1); }
    // even -> odd component
    Matrix<K> psi_of(const Matrix<K>& v) const { return lmul_matrix(v, 0); }

    // Verifies the factorization identity exactly and returns q(v). Any
    // deviation is an algebra bug, reported as MathCheckError.
    K check(const Matrix<K>& v) const {
        const K qv = ideal_.space()->q(v);
        Matrix<K> phi = phi_of(v);
        Matrix<K> psi = psi_of(v);
        Matrix<K> pq = phi * psi;
        Matrix<K> qp = psi * phi;
        Matrix<K> id_ev = Matrix<K>::identity(ideal_.dim_even(), ideal_.space()->proto()).scaled(qv);
        Matrix<K> id_od = Matrix<K>::identity(ideal_.dim_odd(), ideal_.space()->proto()).scaled(qv);
        if (!(pq == id_ev) || !(qp == id_od))
            throw MathCheckError("matrix factorization identity failed");
        return qv;
    }

private:
    // source parity 0 = even -> odd (ψ), 1 = odd -> even (φ)
    Matrix<K> lmul_matrix(const Matrix<K>& v, int source_parity) const {
        const auto& dst_pi = (source_parity == 0) ? ideal_.odd_index() : ideal_.even_index();
        const auto& src = (source_parity == 0) ? ideal_.even_basis() : ideal_.odd_basis();
        const auto& dst = (source_parity == 0) ? ideal_.odd_basis() : ideal_.even_basis();
        Matrix<K> rhs(dst_pi.subsets.size(), src.cols(), ideal_.space()->proto());
        for (std::size_t j = 0; j < src.cols(); ++j) {
            CliffordElement<K> e = (source_parity == 0) ? ideal_.even_element(j) : ideal_.odd_element(j);
            Matrix<K> img = half_coords(lmul_vector(v, e), dst_pi);
            for (std::size_t i = 0; i < img.rows(); ++i) rhs.at(i, j) = img.at(i, 0);
        }
        auto sol = dst.solve(rhs);
        if (!sol) throw Error("MatrixFactorization: image escaped the ideal");
        return *sol;
    }

    SpinorIdeal<K> ideal_;
};

// Fiber dimension of S = coker φ at a point [v] of the quadric.
template <ScalarField K>
std::size_t fiber_rank(const MatrixFactorization<K>& f, const Matrix<K>& v) {
    if (!is_zero(f.ideal().space()->q(v)))
        throw OperationalError("fiber_rank: q(v) != 0 (point is off the quadric)");
    return f.ideal().dim_even() - f.phi_of(v).rank();
}

struct ExactnessReport {
    bool qv_zero{false};
    bool phi_invertible{false};     // only meaningful when q(v) != 0
    bool ker_phi_eq_im_psi{false};  // pointwise 2-periodic exactness
    bool ker_psi_eq_im_phi{false};
    std::size_t rank_phi{0}, rank_psi{0};
    std::size_t fiber{0};

    bool exact() const {
        return qv_zero ? (ker_phi_eq_im_psi && ker_psi_eq_im_phi) : phi_invertible;
    }
};

// Pointwise exactness of ... -> I_ev(-1) -> I_odd -> I_ev -> ... at v. For
// q(v) != 0 the maps are invertible and the complex is trivially exact.
template <ScalarField K>
ExactnessReport mf_exact_at(const MatrixFactorization<K>& f, const Matrix<K>& v) {
    ExactnessReport r;
    const K qv = f.ideal().space()->q(v);
    Matrix<K> phi = f.phi_of(v);
    Matrix<K> psi = f.psi_of(v);
    r.rank_phi = phi.rank();
    r.rank_psi = psi.rank();
    r.qv_zero = is_zero(qv);
    if (!r.qv_zero) {
        f.check(v);  // φψ = ψφ = q(v)·Id certifies invertibility
        r.phi_invertible = r.rank_phi == f.ideal().dim_even() && r.rank_psi == f.ideal().dim_odd();
        return r;
    }
    r.fiber = f.ideal().dim_even() - r.rank_phi;
    // q(v) = 0: products vanish, so im ψ ⊆ ker φ; equality is a rank count
    if (!(phi * psi).is_zero_matrix() || !(psi * phi).is_zero_matrix())
        throw MathCheckError("mf_exact_at: products nonzero at a quadric point");
    r.ker_phi_eq_im_psi = (f.ideal().dim_odd() - r.rank_phi) == r.rank_psi;
    r.ker_psi_eq_im_phi = (f.ideal().dim_even() - r.rank_psi) == r.rank_phi;
    return r;
}

// ===========================================================================
// The explicit isomorphism maps between ideals of same-dimension isotropics
// meeting in even codimension with the same radical intersection: right
// multiplication by the complementary generators in both directions. The
// composition is scalar; the scalar is nonzero iff the pairing determinant
// det(pairing(w_i, w'_j)) on the complements is.
// ===========================================================================

template <ScalarField K>
struct LemmaIsoResult {
    Matrix<K> to_prime;   // I_W -> I_{W'}, coordinates of the stored ideals
    Matrix<K> back;       // I_{W'} -> I_W
    K scalar;             // composition = scalar * Id on I_W
    K pairing_det;        // det(pairing(w_i, w'_j)), complements only
    SpinorIdeal<K> ideal_w;
    SpinorIdeal<K> ideal_wp;
};

namespace detail {

// rows of `inside` that extend `start` to a basis of row-span(inside)
template <ScalarField K>
Matrix<K> extend_row_basis(const Matrix<K>& start, const Matrix<K>& inside) {
    Matrix<K> acc = start;
    Matrix<K> extra(0, inside.cols(), inside.proto());
    for (std::size_t i = 0; i < inside.rows(); ++i) {
        Matrix<K> trial = Matrix<K>::vstack(acc, inside.row(i));
        if (trial.transpose().rank() == acc.rows() + 1) {
            acc = trial;
            extra = extra.rows() == 0 ? inside.row(i) : Matrix<K>::vstack(extra, inside.row(i));
        }
    }
    return extra;
}

// matrix of ξ ↦ ξ·w_1·w_2⋯ (rows in order) restricted to src, expressed in
// dst's basis
template <ScalarField K>
Matrix<K> right_mul_matrix(const SpinorIdeal<K>& src, const SpinorIdeal<K>& dst,
                           const Matrix<K>& rows) {
    const std::size_t fullrows = std::size_t{1} << src.space()->dim();
    Matrix<K> rhs(fullrows, src.dim(), src.space()->proto());
    auto put = [&](std::size_t col, CliffordElement<K> img) {
        for (std::size_t i = 0; i < rows.rows(); ++i)
            img = rmul_vector(img, rows.row(i).transpose());
        for (const auto& [s, c] : img.coeffs()) rhs.at(s, col) = c;
    };
    for (std::size_t j = 0; j < src.dim_even(); ++j) put(j, src.even_element(j));
    for (std::size_t j = 0; j < src.dim_odd(); ++j)
        put(src.dim_even() + j, src.odd_element(j));
    auto sol = dst.full_basis().solve(rhs);
    if (!sol) throw MathCheckError("right multiplication left the target ideal");
    return *sol;
}

}  // namespace detail

template <ScalarField K>
LemmaIsoResult<K> lemma_iso_maps(const IsotropicSubspace<K>& w, const IsotropicSubspace<K>& wp) {
    if (!same_space(*w.space(), *wp.space()))
        throw OperationalError("lemma_iso_maps: different quadratic spaces");
    if (w.dim() != wp.dim()) throw OperationalError("lemma_iso_maps: dim W != dim W'");
    const auto& space = w.space();
    const std::size_t m = w.dim();

    // common part and complements
    Matrix<K> meet_cols = colspan_meet(w.basis().transpose(), wp.basis().transpose());
    Matrix<K> meet = meet_cols.transpose();
    const std::size_t k = meet.rows();
    if ((m - k) % 2 != 0)
        throw OperationalError("lemma_iso_maps: intersection has odd codimension " +
                               std::to_string(m - k));
    Matrix<K> rad = radical_basis(*space);
    if (!colspan_equal(colspan_meet(w.basis().transpose(), rad),
                       colspan_meet(wp.basis().transpose(), rad)))
        throw OperationalError("lemma_iso_maps: W ∩ rad != W' ∩ rad");

    Matrix<K> w_extra = detail::extend_row_basis(meet, w.basis());
    Matrix<K> wp_extra = detail::extend_row_basis(meet, wp.basis());
    if (w_extra.rows() != m - k || wp_extra.rows() != m - k)
        throw Error("lemma_iso_maps: complement extraction failed");

    // det(pairing(w_i, w'_j)) over the complements
    K pairing_det = one_like(space->proto());
    if (m - k > 0)
        pairing_det = (w_extra * space->gram() * wp_extra.transpose()).det();

    LemmaIsoResult<K> res{Matrix<K>(0, 0, space->proto()), Matrix<K>(0, 0, space->proto()),
                          zero_like(space->proto()), pairing_det,
                          SpinorIdeal<K>(w), SpinorIdeal<K>(wp)};

    res.to_prime = detail::right_mul_matrix(res.ideal_w, res.ideal_wp, wp_extra);
    res.back = detail::right_mul_matrix(res.ideal_wp, res.ideal_w, w_extra);

    Matrix<K> comp = res.back * res.to_prime;
    const K c = comp.at(0, 0);
    if (!(comp == Matrix<K>::identity(res.ideal_w.dim(), space->proto()).scaled(c)))
        throw MathCheckError("lemma_iso_maps: composition is not a scalar matrix");
    res.scalar = c;
    return res;
}

// ===========================================================================
// Graded module homomorphisms out of the cyclic module I = Cl·ω: a hom is
// the image η of ω, constrained by Ann_l(ω)·η = 0; degree-preserving means η
// has the parity of ω.
// ===========================================================================

namespace detail {

// candidates: columns (full coords) spanning the allowed target space;
// constraints: for every column x of ann (as element), x·η = 0
template <ScalarField K>
Matrix<K> hom_space(const SpacePtr<K>& space, Matrix<K> candidates, const Matrix<K>& ann) {
    for (std::size_t a = 0; a < ann.cols() && candidates.cols() > 0; ++a) {
        CliffordElement<K> x = element_from_full_coords(space, ann.col(a));
        if (x.zero()) continue;
        const std::size_t fullrows = std::size_t{1} << space->dim();
        Matrix<K> m(fullrows, candidates.cols(), space->proto());
        for (std::size_t j = 0; j < candidates.cols(); ++j) {
            CliffordElement<K> eta = element_from_full_coords(space, candidates.col(j));
            CliffordElement<K> img = clifford_mul(x, eta);
            for (const auto& [s, c] : img.coeffs()) m.at(s, j) = c;
        }
        Matrix<K> ker = m.kernel_basis();
        candidates = candidates * ker;
    }
    return candidates;
}

}  // namespace detail

// Dimension of the space of graded (parity-preserving) module homs I -> I'.
// The ungraded variant admits images of either parity.
template <ScalarField K>
std::size_t module_hom_dim(const SpinorIdeal<K>& ideal, const SpinorIdeal<K>& target,
                           bool graded = true) {
    if (!same_space(*ideal.space(), *target.space()))
        throw OperationalError("module_hom_dim: different Clifford algebras");
    Matrix<K> ann = ideal.action().kernel_basis();
    if (ann.cols() + ideal.dim() != ideal.action().cols())
        throw Error("module_hom_dim: annihilator dimension bookkeeping failed");
    Matrix<K> candidates = graded ? target.parity_basis_full(ideal.omega_parity())
                                  : target.full_basis();
    return detail::hom_space(ideal.space(), candidates, ann).cols();
}

// ===========================================================================
// The short exact sequence configuration: W ⊂ W' of one dimension more, and
// W'' with W'' ∩ rad = W' ∩ rad. Checks I_{W'} ⊆ I_W, the dimension halving,
// and that I_W / I_{W'} is isomorphic to I_{W''} as a graded module (found
// by the cyclic-hom solver on the quotient; wrong-family W'' fail here).
// ===========================================================================

struct SesReport {
    bool containment_ok{false};
    bool dims_ok{false};
    bool quotient_iso_ok{false};
    std::size_t hom_dim{0};
    std::size_t dim_w{0}, dim_wp{0}, dim_wpp{0};
    std::string detail;

    bool passed() const { return containment_ok && dims_ok && quotient_iso_ok; }
    bool additivity_ok() const { return dim_wp + dim_wpp == dim_w; }
};

template <ScalarField K>
SesReport ses_check(const IsotropicSubspace<K>& w, const IsotropicSubspace<K>& wp,
                    const IsotropicSubspace<K>& wpp, std::uint64_t seed = 0xab5e) {
    if (!same_space(*w.space(), *wp.space()) || !same_space(*w.space(), *wpp.space()))
        throw OperationalError("ses_check: different quadratic spaces");
    if (wp.dim() != w.dim() + 1)
        throw OperationalError("ses_check: need dim W' = dim W + 1");
    if (!subspace_contains(wp.basis(), w.basis()))
        throw OperationalError("ses_check: W is not contained in W'");
    Matrix<K> rad = radical_basis(*w.space());
    if (!colspan_equal(colspan_meet(wp.basis().transpose(), rad),
                       colspan_meet(wpp.basis().transpose(), rad)))
        throw OperationalError("ses_check: W'' ∩ rad != W' ∩ rad");

    const auto& space = w.space();
    SpinorIdeal<K> iw(w), iwp(wp), iwpp(wpp);
    SesReport r;
    r.dim_w = iw.dim();
    r.dim_wp = iwp.dim();
    r.dim_wpp = iwpp.dim();

    Matrix<K> bw = iw.full_basis();
    Matrix<K> bwp = iwp.full_basis();
    r.containment_ok = colspan_contains(bw, bwp);
    if (!r.containment_ok) r.detail += "containment failed; ";
    r.dims_ok = (2 * iwp.dim() == iw.dim());
    if (!r.dims_ok) r.detail += "dimension halving failed; ";

    // annihilator of [ω_W] in the quotient I_W / I_{W'}
    Matrix<K> ann = preimage_of_colspan(iw.action(), bwp);
    Matrix<K> candidates = iwpp.parity_basis_full(iw.omega_parity());
    Matrix<K> homs = detail::hom_space(space, candidates, ann);
    r.hom_dim = homs.cols();
    if (homs.cols() == 0) {
        r.detail += "no quotient homomorphism; ";
        return r;
    }

    // quotient representatives: ideal basis columns independent modulo I_{W'}
    std::vector<std::uint32_t> wit;
    Matrix<K> acc = bwp;
    std::vector<std::size_t> chosen;
    for (std::size_t j = 0; j < iw.dim(); ++j) {
        Matrix<K> trial = Matrix<K>::hstack(acc, bw.col(j));
        if (trial.rank() == acc.cols() + 1) {
            acc = trial;
            chosen.push_back(j);
            wit.push_back(j < iw.dim_even() ? iw.even_witness()[j]
                                            : iw.odd_witness()[j - iw.dim_even()]);
        }
    }
    const std::size_t quot_dim = chosen.size();
    if (quot_dim != iw.dim() - iwp.dim()) throw Error("ses_check: quotient dimension mismatch");
    if (quot_dim != iwpp.dim()) {
        r.detail += "quotient and I_{W''} dimensions differ; ";
        return r;
    }

    // invertibility of a general element of the hom space (3 retries)
    Rng rng(seed);
    const std::size_t fullrows = std::size_t{1} << space->dim();
    for (int attempt = 0; attempt < 3 && !r.quotient_iso_ok; ++attempt) {
        Matrix<K> eta_coords(fullrows, 1, space->proto());
        if (homs.cols() == 1 && attempt == 0) {
            eta_coords = homs.col(0);
        } else {
            for (std::size_t j = 0; j < homs.cols(); ++j)
                eta_coords = eta_coords + homs.col(j).scaled(random_scalar(rng, space->proto()));
        }
        CliffordElement<K> eta = element_from_full_coords(space, eta_coords);
        if (eta.zero()) continue;
        Matrix<K> img(fullrows, quot_dim, space->proto());
        for (std::size_t j = 0; j < quot_dim; ++j) {
            CliffordElement<K> x = CliffordElement<K>::monomial(space, wit[j], one_like(space->proto()));
            CliffordElement<K> y = clifford_mul(x, eta);
            for (const auto& [s, c] : y.coeffs()) img.at(s, j) = c;
        }
        if (!colspan_contains(iwpp.full_basis(), img))
            throw Error("ses_check: hom image escaped I_{W''}");
        if (img.rank() == quot_dim) r.quotient_iso_ok = true;
    }
    if (!r.quotient_iso_ok) r.detail += "no invertible quotient hom; ";
    return r;
}

// ===========================================================================
// Graded ideal pieces I_k = A_{k-n}·ω inside the Z-graded algebra of a
// single quadric, with the stabilization checks.
// ===========================================================================

struct GradedIdealTable {
    int k_lo{0};
    std::vector<std::size_t> dims;           // dim I_k for k = k_lo..k_hi
    std::vector<bool> shift_matches;         // h·I_k == I_{k+2} where testable
    bool stabilized_from_2n_minus_1{false};  // dims constant and equal to dim I_ev
    std::size_t stable_value{0};
};

template <ScalarField K>
GradedIdealTable graded_ideal_dims(const IsotropicSubspace<K>& w, int k_lo, int k_hi) {
    const auto& space = w.space();
    const std::size_t n = space->n();
    const std::size_t d = space->dim();
    if (w.dim() != n) throw OperationalError("graded_ideal_dims: need dim W = n");
    auto alg = std::make_shared<const GradedAlgebra<K>>(std::vector<Matrix<K>>{space->gram()});

    // ω as the degree-n wedge monomial of W
    GradedElement<K> omega = GradedElement<K>::monomial(alg, 0, one_like(space->proto()));
    for (std::size_t i = w.dim(); i-- > 0;)
        omega = graded_lmul_vector(w.vec(i), omega);
    if (omega.degree() != static_cast<int>(n)) throw Error("graded_ideal_dims: bad omega degree");

    auto piece_coords = [&](const GradedElement<K>& x, int k) {
        auto basis = graded_piece_basis(d, 1, k);
        std::map<GradedKey, std::size_t> index;
        for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
        Matrix<K> v(basis.size(), 1, space->proto());
        for (const auto& [kk, c] : x.coeffs()) v.at(index.at(kk), 0) = c;
        return v;
    };

    auto ideal_piece = [&](int k) {
        // spanning columns of A_{k-n}·ω inside A_k
        const int j = k - static_cast<int>(n);
        auto dom = graded_piece_basis(d, 1, j);
        Matrix<K> cols(graded_piece_basis(d, 1, k).size(), dom.size(), space->proto());
        for (std::size_t t = 0; t < dom.size(); ++t) {
            GradedElement<K> mu = GradedElement<K>::monomial(alg, dom[t], one_like(space->proto()));
            Matrix<K> v = piece_coords(graded_mul(mu, omega), k);
            for (std::size_t i = 0; i < v.rows(); ++i) cols.at(i, t) = v.at(i, 0);
        }
        return cols;
    };

    GradedIdealTable table;
    table.k_lo = k_lo;
    std::map<int, Matrix<K>> pieces;
    for (int k = k_lo; k <= k_hi; ++k) {
        if (k < static_cast<int>(n)) {
            table.dims.push_back(0);
            continue;
        }
        pieces.emplace(k, ideal_piece(k));
        table.dims.push_back(pieces.at(k).rank());
    }
    // h·I_k = I_{k+2} wherever both sides are in range and k >= n
    for (int k = k_lo; k + 2 <= k_hi; ++k) {
        if (k < static_cast<int>(n)) {
            table.shift_matches.push_back(true);
            continue;
        }
        const auto& src = pieces.at(k);
        auto dst_basis = graded_piece_basis(d, 1, k + 2);
        std::map<GradedKey, std::size_t> index;
        for (std::size_t i = 0; i < dst_basis.size(); ++i) index.emplace(dst_basis[i], i);
        Matrix<K> shifted(dst_basis.size(), src.cols(), space->proto());
        auto src_basis = graded_piece_basis(d, 1, k);
        for (std::size_t t = 0; t < src.cols(); ++t)
            for (std::size_t i = 0; i < src_basis.size(); ++i) {
                if (is_zero(src.at(i, t))) continue;
                shifted.at(index.at(key_bump_alpha(src_basis[i], 0)), t) = src.at(i, t);
            }
        table.shift_matches.push_back(colspan_equal(shifted, pieces.at(k + 2)));
    }
    // stabilization against the ungraded ideal
    SpinorIdeal<K> ideal(w);
    table.stable_value = ideal.dim_even();
    table.stabilized_from_2n_minus_1 = true;
    for (int k = std::max(k_lo, static_cast<int>(2 * n) - 1); k <= k_hi; ++k)
        if (table.dims[static_cast<std::size_t>(k - k_lo)] != table.stable_value)
            table.stabilized_from_2n_minus_1 = false;
    return table;
}

}  // namespace quadspin

#endif
