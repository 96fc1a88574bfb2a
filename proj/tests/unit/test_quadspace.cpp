#include <doctest.h>

#include "quadspin/multipoly.hpp"
#include "quadspin/quadspace.hpp"

using namespace quadspin;

namespace {

template <class K>
SpacePtr<K> hyperbolic_space(std::size_t n, const K& like) {
    Matrix<K> h(2 * n, 2 * n, like);
    for (std::size_t i = 0; i < n; ++i) {
        h.at(2 * i, 2 * i + 1) = one_like(like);
        h.at(2 * i + 1, 2 * i) = one_like(like);
    }
    SplitFrame<K> fr{Matrix<K>::identity(2 * n, like), n, 0, 0};
    return std::make_shared<QuadraticSpace<K>>(h, fr);
}

template <class K>
Matrix<K> diag_space_gram(std::vector<long> diag, const K& like) {
    Matrix<K> g(diag.size(), diag.size(), like);
    for (std::size_t i = 0; i < diag.size(); ++i) g.at(i, i) = int_like(like, diag[i]);
    return g;
}

}  // namespace

TEST_CASE("corank and radical basics") {
    auto h = hyperbolic_space<Rat>(2, Rat(0));
    CHECK(corank(*h) == 0);
    CHECK(radical_basis(*h).cols() == 0);

    QuadraticSpace<Rat> d1(diag_space_gram({1, 1, 1, 0}, Rat(0)));
    CHECK(corank(d1) == 1);
    Matrix<Rat> r = radical_basis(d1);
    REQUIRE(r.cols() == 1);
    CHECK(r.at(3, 0) == Rat(1));
    CHECK(r.at(0, 0) == Rat(0));

    QuadraticSpace<Rat> d2(diag_space_gram({1, 1, 0, 0}, Rat(0)));
    CHECK(corank(d2) == 2);
}

TEST_CASE("radical of a conjugated corank-2 form") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        auto q = random_split_space<Fp>(3, 2, Fp(0, 10007), seed);
        CHECK(corank(q) == 2);
        Matrix<Fp> r = radical_basis(q);
        REQUIRE(r.cols() == 2);
        CHECK((q.gram() * r).is_zero_matrix());
        // the recorded frame's radical columns are killed too
        REQUIRE(q.frame().has_value());
        for (std::size_t i = 0; i < 2; ++i)
            CHECK((q.gram() * q.frame()->rad(i)).is_zero_matrix());
    }
}

TEST_CASE("max isotropic on the standard hyperbolic space") {
    auto h = hyperbolic_space<Rat>(2, Rat(0));
    auto w0 = max_isotropic_basis(h, 0);
    auto w1 = max_isotropic_basis(h, 1);
    // hint 0: span(e1, e2) = coordinates 0 and 2; hint 1: span(e1, f2)
    CHECK(w0.dim() == 2);
    CHECK(w0.basis().at(0, 0) == Rat(1));
    CHECK(w0.basis().at(1, 2) == Rat(1));
    CHECK(w1.basis().at(1, 3) == Rat(1));
    CHECK(subspace_meet_dim(w0.basis(), w1.basis()) == 1);
}

TEST_CASE("max isotropic over F_7 for a split diagonal form") {
    // diag(1, -1, 1, -1) is hyperbolic over any field
    auto g = diag_space_gram({1, -1, 1, -1}, Fp(0, 7));
    auto sp = std::make_shared<QuadraticSpace<Fp>>(g);
    auto w = max_isotropic_basis(SpacePtr<Fp>(sp), 0);
    CHECK(w.dim() == 2);
    CHECK((w.basis() * g * w.basis().transpose()).is_zero_matrix());
}

TEST_CASE("rational anisotropic forms are refused") {
    auto g = diag_space_gram({1, 1, 1, 1}, Rat(0));
    auto sp = std::make_shared<QuadraticSpace<Rat>>(g);
    CHECK_THROWS_AS(max_isotropic_basis(SpacePtr<Rat>(sp), 0), NotSupportedError);
}

TEST_CASE("corank-1 maximal isotropic contains the radical") {
    // hyperbolic ⊕ <1> ⊕ 0, dim 4
    Matrix<Rat> g(4, 4, Rat(0));
    g.at(0, 1) = Rat(1);
    g.at(1, 0) = Rat(1);
    g.at(2, 2) = Rat(1);
    SplitFrame<Rat> fr{Matrix<Rat>::identity(4, Rat(0)), 1, 1, 1};
    auto sp = std::make_shared<QuadraticSpace<Rat>>(g, fr);
    auto w = max_isotropic_basis(SpacePtr<Rat>(sp), 0);
    CHECK(w.dim() == 2);
    CHECK(subspace_contains(w.basis(), radical_basis(*sp).transpose()));
    CHECK((w.basis() * g * w.basis().transpose()).is_zero_matrix());

    // over F_p with corank 1 the same containment holds on random split forms
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        auto q = std::make_shared<QuadraticSpace<Fp>>(random_split_space<Fp>(3, 1, Fp(0, 10007), seed));
        auto wq = max_isotropic_basis(SpacePtr<Fp>(q), static_cast<int>(seed % 2));
        CHECK(wq.dim() == 3);
        CHECK(subspace_contains(wq.basis(), radical_basis(*q).transpose()));
    }
}

TEST_CASE("same_family parity examples") {
    auto h = hyperbolic_space<Rat>(2, Rat(0));
    auto w0 = max_isotropic_basis(h, 0);  // e1, e2
    CHECK(same_family(w0, w0));
    // span(f1, f2): intersection 0, even codimension -> same family
    Matrix<Rat> ff(2, 4, Rat(0));
    ff.at(0, 1) = Rat(1);
    ff.at(1, 3) = Rat(1);
    IsotropicSubspace<Rat> wf(h, ff);
    CHECK(same_family(w0, wf));
    // span(f1, e2): intersection dim 1 -> opposite family
    Matrix<Rat> fe(2, 4, Rat(0));
    fe.at(0, 1) = Rat(1);
    fe.at(1, 2) = Rat(1);
    IsotropicSubspace<Rat> wfe(h, fe);
    CHECK_FALSE(same_family(w0, wfe));
}

TEST_CASE("same_family is an equivalence with exactly two classes") {
    Rng rng(1234);
    for (std::size_t n : {2u, 3u}) {
        auto q = std::make_shared<QuadraticSpace<Fp>>(random_split_space<Fp>(n, 0, Fp(0, 10007), 100 + n));
        auto qp = SpacePtr<Fp>(q);
        std::vector<IsotropicSubspace<Fp>> ws;
        ws.push_back(max_isotropic_basis(qp, 0));
        ws.push_back(max_isotropic_basis(qp, 1));
        for (int t = 0; t < 6; ++t) {
            Matrix<Fp> iso = random_even_isometry(*q, rng, 2);
            ws.emplace_back(qp, ws[rng.below(ws.size())].basis() * iso.transpose());
        }
        // two classes, represented by ws[0] and ws[1]
        CHECK_FALSE(same_family(ws[0], ws[1]));
        for (const auto& w : ws)
            CHECK(same_family(w, ws[0]) != same_family(w, ws[1]));
        // transitivity witnesses on sampled triples
        for (int t = 0; t < 40; ++t) {
            const auto& a = ws[rng.below(ws.size())];
            const auto& b = ws[rng.below(ws.size())];
            const auto& c = ws[rng.below(ws.size())];
            if (same_family(a, b) && same_family(b, c)) CHECK(same_family(a, c));
        }
    }
}

TEST_CASE("even isometries preserve the form and each family") {
    Rng rng(555);
    auto q = std::make_shared<QuadraticSpace<Fp>>(random_split_space<Fp>(3, 0, Fp(0, 10007), 7));
    auto qp = SpacePtr<Fp>(q);
    auto w = max_isotropic_basis(qp, 0);
    for (int t = 0; t < 10; ++t) {
        Matrix<Fp> iso = random_even_isometry(*q, rng, 2 + 2 * static_cast<int>(rng.below(2)));
        CHECK(iso.transpose() * q->gram() * iso == q->gram());
        IsotropicSubspace<Fp> w2(qp, w.basis() * iso.transpose());
        CHECK(same_family(w, w2));
    }
}

TEST_CASE("spinor invariant: smooth case") {
    auto q = std::make_shared<QuadraticSpace<Fp>>(random_split_space<Fp>(2, 0, Fp(0, 10007), 3));
    auto qp = SpacePtr<Fp>(q);
    auto w0 = max_isotropic_basis(qp, 0);
    auto w1 = max_isotropic_basis(qp, 1);
    auto i0 = spinor_invariant(w0);
    auto i1 = spinor_invariant(w1);
    CHECK(i0.radical_meet_dim == 0);
    REQUIRE(i0.family_bit.has_value());
    REQUIRE(i1.family_bit.has_value());
    CHECK(i0.family_bit != i1.family_bit);
    // family bits refine same_family
    CHECK((same_family(w0, w1)) == (i0.family_bit == i1.family_bit));
}

TEST_CASE("spinor invariant: the corank-2 picture in dim 4") {
    // V = hyperbolic(e,f) ⊕ 0^2; the quadric is two planes meeting in the
    // cone line. A line on one plane through a cone point has invariant
    // radical_meet_dim = 1 with a family bit.
    Matrix<Rat> g(4, 4, Rat(0));
    g.at(0, 1) = Rat(1);
    g.at(1, 0) = Rat(1);
    auto sp = std::make_shared<QuadraticSpace<Rat>>(g);
    auto spp = SpacePtr<Rat>(sp);

    Matrix<Rat> we(2, 4, Rat(0));  // span(e, r1)
    we.at(0, 0) = Rat(1);
    we.at(1, 2) = Rat(1);
    IsotropicSubspace<Rat> line_e(spp, we);
    auto inv_e = spinor_invariant(line_e);
    CHECK(inv_e.radical_meet_dim == 1);
    REQUIRE(inv_e.family_bit.has_value());

    // another line on the same plane through the same cone point: span(r1, e + r2)
    Matrix<Rat> we2(2, 4, Rat(0));
    we2.at(0, 2) = Rat(1);
    we2.at(1, 0) = Rat(1);
    we2.at(1, 3) = Rat(1);
    IsotropicSubspace<Rat> line_e2(spp, we2);
    CHECK(spinor_invariant(line_e2) == inv_e);

    // a line on the other plane gets the other family bit
    Matrix<Rat> wf(2, 4, Rat(0));
    wf.at(0, 1) = Rat(1);
    wf.at(1, 2) = Rat(1);
    IsotropicSubspace<Rat> line_f(spp, wf);
    auto inv_f = spinor_invariant(line_f);
    CHECK(inv_f.radical_meet_dim == 1);
    REQUIRE(inv_f.family_bit.has_value());
    CHECK(inv_f.family_bit != inv_e.family_bit);

    // the cone line itself is not maximal in the quotient: no family bit
    Matrix<Rat> wr(2, 4, Rat(0));
    wr.at(0, 2) = Rat(1);
    wr.at(1, 3) = Rat(1);
    IsotropicSubspace<Rat> cone(spp, wr);
    auto inv_c = spinor_invariant(cone);
    CHECK(inv_c.radical_meet_dim == 2);
    CHECK_FALSE(inv_c.family_bit.has_value());

    CHECK_THROWS_AS(spinor_invariant(IsotropicSubspace<Rat>(
                        std::make_shared<QuadraticSpace<Rat>>(Matrix<Rat>(4, 4, Rat(0))),
                        we)),
                    OperationalError);  // corank 4 > 2 rejected
}

TEST_CASE("spinor invariant is basis-invariant") {
    Rng rng(777);
    auto q = std::make_shared<QuadraticSpace<Fp>>(random_split_space<Fp>(3, 2, Fp(0, 10007), 21));
    auto qp = SpacePtr<Fp>(q);
    auto w = max_isotropic_basis(qp, 1);
    auto inv = spinor_invariant(w);
    for (int t = 0; t < 10; ++t) {
        auto [u, uinv] = random_invertible<Fp>(w.dim(), rng, Fp(0, 10007));
        IsotropicSubspace<Fp> w2(qp, u * w.basis());
        CHECK(spinor_invariant(w2) == inv);
    }
}

TEST_CASE("random generation: determinism and shape") {
    auto a = random_system<Fp>(4, 4, Fp(0, 10007), 42);
    auto b = random_system<Fp>(4, 4, Fp(0, 10007), 42);
    REQUIRE(a.size() == 4);
    for (int t = 0; t < 4; ++t) {
        CHECK(a[static_cast<std::size_t>(t)].gram() == b[static_cast<std::size_t>(t)].gram());
        CHECK(a[static_cast<std::size_t>(t)].dim() == 8);
        CHECK(a[static_cast<std::size_t>(t)].gram() ==
              a[static_cast<std::size_t>(t)].gram().transpose());
    }
    auto c = random_system<Fp>(4, 4, Fp(0, 10007), 43);
    CHECK_FALSE(a[0].gram() == c[0].gram());
}

TEST_CASE("random pencils have squarefree discriminant almost always") {
    int squarefree = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto sys = random_system<Fp>(2, 2, Fp(0, 10007), seed);
        std::vector<Matrix<Fp>> mats = {sys[0].gram(), sys[1].gram()};
        MultiPoly<Fp> disc = det_of_linear_matrix(mats);
        if (!disc.zero() && poly_is_squarefree(disc)) ++squarefree;
    }
    CHECK(squarefree >= 95);
}

TEST_CASE("split frames satisfy the standard pairing pattern") {
    for (std::uint64_t seed : {1ull, 9ull, 33ull}) {
        for (std::size_t crk : {0u, 1u, 2u}) {
            auto q = random_split_space<Fp>(3, crk, Fp(0, 10007), seed);
            const auto& fr = *q.frame();
            CHECK(2 * fr.pairs + fr.aniso + fr.radical == 6);
            CHECK(fr.radical == crk);
            for (std::size_t i = 0; i < fr.pairs; ++i) {
                CHECK(is_zero(q.q(fr.e(i))));
                CHECK(is_zero(q.q(fr.f(i))));
                CHECK(q.pairing(fr.e(i), fr.f(i)) == Fp(1, 10007));
            }
        }
    }
}
