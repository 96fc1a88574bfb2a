#include <doctest.h>

#include "quadspin/multipoly.hpp"

using namespace quadspin;

namespace {

// Symbolic determinant oracle: naive cofactor expansion over MultiPoly
// entries. Independent of the interpolation path.
template <class K>
MultiPoly<K> symbolic_det(const std::vector<std::vector<MultiPoly<K>>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    MultiPoly<K> acc(m[0][0].nvars(), m[0][0].proto());
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<MultiPoly<K>>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<MultiPoly<K>> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        MultiPoly<K> term = m[0][j] * symbolic_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

template <class K>
MultiPoly<K> symbolic_pencil_det(const std::vector<Matrix<K>>& mats) {
    const int m = static_cast<int>(mats.size());
    const std::size_t n = mats[0].rows();
    const K like = mats[0].proto();
    std::vector<std::vector<MultiPoly<K>>> sym(n, std::vector<MultiPoly<K>>(n, MultiPoly<K>(m, like)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (int t = 0; t < m; ++t)
                sym[i][j] = sym[i][j] + MultiPoly<K>::variable(m, t, like).scaled(mats[static_cast<std::size_t>(t)].at(i, j));
    return symbolic_det(sym);
}

}  // namespace

TEST_CASE("det_of_linear_matrix: diagonal pencil matches the symbolic oracle") {
    Rat one(1);
    Matrix<Rat> b1 = Matrix<Rat>::identity(4, one);
    Matrix<Rat> b2(4, 4, one);
    for (int i = 0; i < 4; ++i) b2.at(i, i) = Rat(i + 1);
    std::vector<Matrix<Rat>> mats = {b1, b2};
    MultiPoly<Rat> f = det_of_linear_matrix(mats);
    CHECK(f == symbolic_pencil_det(mats));
    // and it is the stated product (λ₁+λ₂)(λ₁+2λ₂)(λ₁+3λ₂)(λ₁+4λ₂)
    MultiPoly<Rat> expect = MultiPoly<Rat>::constant(2, one);
    for (int i = 1; i <= 4; ++i) {
        MultiPoly<Rat> lin = MultiPoly<Rat>::variable(2, 0, one) +
                             MultiPoly<Rat>::variable(2, 1, one).scaled(Rat(i));
        expect = expect * lin;
    }
    CHECK(f == expect);
}

TEST_CASE("det_of_linear_matrix: single matrix gives det * λ^N") {
    Fp like(0, 10007);
    Matrix<Fp> id = Matrix<Fp>::identity(5, one_like(like));
    MultiPoly<Fp> f = det_of_linear_matrix(std::vector<Matrix<Fp>>{id});
    REQUIRE(f.term_count() == 1);
    CHECK(f.terms().begin()->first == MultiPoly<Fp>::Expo{5});
    CHECK(f.terms().begin()->second == one_like(like));
}

TEST_CASE("det_of_linear_matrix: repeated matrix factors the pencil") {
    Rng rng(3);
    Fp like(0, 10007);
    Matrix<Fp> b(3, 3, like);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Fp x = rng.fp(10007);
            b.at(i, j) = x;
            b.at(j, i) = x;
        }
    std::vector<Matrix<Fp>> mats = {b, b};
    MultiPoly<Fp> f = det_of_linear_matrix(mats);
    MultiPoly<Fp> lin = MultiPoly<Fp>::variable(2, 0, like) + MultiPoly<Fp>::variable(2, 1, like);
    MultiPoly<Fp> expect = lin * lin * lin;
    expect = expect.scaled(b.det());
    CHECK(f == expect);
}

TEST_CASE("det_of_linear_matrix: evaluation agreement at 20 random points") {
    Rng rng(11);
    Fp like(0, 10007);
    for (int m : {2, 3, 4}) {
        std::vector<Matrix<Fp>> mats;
        for (int t = 0; t < m; ++t) {
            Matrix<Fp> b(6, 6, like);
            for (int i = 0; i < 6; ++i)
                for (int j = i; j < 6; ++j) {
                    Fp x = rng.fp(10007);
                    b.at(i, j) = x;
                    b.at(j, i) = x;
                }
            mats.push_back(b);
        }
        MultiPoly<Fp> f = det_of_linear_matrix(mats);
        for (int t = 0; t < 20; ++t) {
            std::vector<Fp> lam;
            Matrix<Fp> acc(6, 6, like);
            for (int i = 0; i < m; ++i) {
                Fp li = rng.fp(10007);
                lam.push_back(li);
                acc = acc + mats[static_cast<std::size_t>(i)].scaled(li);
            }
            CHECK(f.eval(lam) == acc.det());
        }
    }
}

TEST_CASE("det_of_linear_matrix: field-too-small is reported") {
    Fp like(0, 11);
    Matrix<Fp> id = Matrix<Fp>::identity(4, one_like(like));
    std::vector<Matrix<Fp>> mats = {id, id};  // needs p > 4*(2+2) = 16
    CHECK_THROWS_AS(det_of_linear_matrix(mats), FieldTooSmallError);
}

TEST_CASE("poly_is_squarefree on binary forms") {
    Rat one(1);
    auto lin = [&](long a, long b) {
        return MultiPoly<Rat>::variable(2, 0, one).scaled(Rat(a)) +
               MultiPoly<Rat>::variable(2, 1, one).scaled(Rat(b));
    };
    CHECK(poly_is_squarefree(lin(1, 1) * lin(1, 2)));
    CHECK_FALSE(poly_is_squarefree(lin(1, 1) * lin(1, 1)));
    CHECK(poly_is_squarefree(lin(1, 0) * lin(0, 1)));            // λ₁λ₂
    CHECK_FALSE(poly_is_squarefree(lin(1, 0) * lin(1, 0)));      // λ₁²
    CHECK_FALSE(poly_is_squarefree(lin(0, 1) * lin(0, 1)));      // λ₂²
    CHECK(poly_is_squarefree(lin(1, 0)));
    CHECK_THROWS_AS(poly_is_squarefree(MultiPoly<Rat>(2, one)), OperationalError);

    // product of distinct linear forms over F_p is squarefree; adding a
    // square factor flips the answer
    Fp fone(1, 101);
    auto linp = [&](long a, long b) {
        return MultiPoly<Fp>::variable(2, 0, fone).scaled(Fp(a, 101)) +
               MultiPoly<Fp>::variable(2, 1, fone).scaled(Fp(b, 101));
    };
    MultiPoly<Fp> f = linp(1, 3) * linp(1, 5) * linp(1, 7) * linp(2, 9);
    CHECK(poly_is_squarefree(f));
    CHECK_FALSE(poly_is_squarefree(f * linp(1, 5)));
}

TEST_CASE("squarefree cross-check by root counting over F_p") {
    // for a squarefree product of k distinct linear forms none of which is
    // λ₂, the dehomogenization has exactly k distinct roots and degree k
    Fp fone(1, 10007);
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Fp> slopes;
        while (slopes.size() < 4) {
            Fp s = rng.fp(10007);
            bool dup = false;
            for (Fp t : slopes) dup |= (t == s);
            if (!dup) slopes.push_back(s);
        }
        MultiPoly<Fp> f = MultiPoly<Fp>::constant(2, fone);
        for (Fp s : slopes) {
            MultiPoly<Fp> lin = MultiPoly<Fp>::variable(2, 0, fone) +
                                MultiPoly<Fp>::variable(2, 1, fone).scaled(s);
            f = f * lin;
        }
        CHECK(poly_is_squarefree(f));
        UniPoly<Fp> u = f.dehomogenize(0);
        CHECK(fp_roots(u).size() == 4);
        MultiPoly<Fp> g = f * (MultiPoly<Fp>::variable(2, 0, fone) +
                               MultiPoly<Fp>::variable(2, 1, fone).scaled(slopes[0]));
        CHECK_FALSE(poly_is_squarefree(g));
        CHECK(fp_roots(g.dehomogenize(0)).size() == 4);  // still 4 distinct roots
    }
}

TEST_CASE("unipoly: gcd, resultant, roots") {
    Fp one(1, 10007);
    UniPoly<Fp> x = UniPoly<Fp>::x(one);
    auto lin = [&](long r) { return x - UniPoly<Fp>::constant(Fp(r, 10007)); };
    UniPoly<Fp> f = lin(3) * lin(5) * lin(9);
    UniPoly<Fp> g = lin(5) * lin(11);
    UniPoly<Fp> d = upoly_gcd(f, g);
    CHECK(d.deg() == 1);
    CHECK(fp_roots(d) == std::vector<Fp>{Fp(5, 10007)});
    CHECK(is_zero(upoly_resultant(f, g)));          // common root 5
    CHECK_FALSE(is_zero(upoly_resultant(f, lin(11))));
    auto roots = fp_roots(f);
    CHECK(roots == std::vector<Fp>{Fp(3, 10007), Fp(5, 10007), Fp(9, 10007)});

    // resultant matches the product formula lc(f)^deg g * prod g(roots of f)
    UniPoly<Fp> h = lin(2) * lin(7);
    Fp prod = one;
    for (Fp r : fp_roots(f)) prod = prod * h.eval(r);
    CHECK(upoly_resultant(f, h) == prod);
}

TEST_CASE("unipoly divmod and derivative over Q") {
    Rat one(1);
    UniPoly<Rat> x = UniPoly<Rat>::x(one);
    UniPoly<Rat> f = x * x * x - UniPoly<Rat>::constant(Rat(1));
    UniPoly<Rat> g = x - UniPoly<Rat>::constant(Rat(1));
    auto [q, r] = divmod(f, g);
    CHECK(r.zero());
    CHECK(q * g == f);
    CHECK(f.derivative().coeff(2) == Rat(3));
    CHECK(upoly_gcd(f, f.derivative()).deg() == 0);
}
