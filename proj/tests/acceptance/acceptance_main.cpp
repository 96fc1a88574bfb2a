// Acceptance suite: one criterion per function, one PASS/FAIL line each,
// exit code = number of failed criteria. Run through ctest or directly; the
// CLI criterion needs QUADSPIN_CLI pointing at the binary.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "quadspin/linsys.hpp"
#include "quadspin/system_io.hpp"

using namespace quadspin;

namespace {

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

template <class K>
SpacePtr<K> split_space(std::size_t n, std::size_t crk, const K& like, std::uint64_t seed) {
    return std::make_shared<QuadraticSpace<K>>(random_split_space<K>(n, crk, like, seed));
}

Matrix<Fp> random_vec(std::size_t d, Rng& rng, std::uint64_t p) {
    Matrix<Fp> v(d, 1, Fp(0, p));
    for (std::size_t i = 0; i < d; ++i) v.at(i, 0) = rng.fp(p);
    return v;
}

Matrix<Rat> random_vec_q(std::size_t d, Rng& rng) {
    Matrix<Rat> v(d, 1, Rat(0));
    for (std::size_t i = 0; i < d; ++i) v.at(i, 0) = Rat(rng.range(-9, 9));
    return v;
}

// a q(v) = 0 point away from the radical, via the line trick
Matrix<Fp> smooth_point(const QuadraticSpace<Fp>& q, Rng& rng) {
    const std::uint64_t p = q.proto().p;
    const std::size_t d = q.dim();
    for (;;) {
        Matrix<Fp> u = random_vec(d, rng, p), w = random_vec(d, rng, p);
        const Fp a = q.q(w);
        const Fp b = q.pairing(u, w) + q.pairing(w, u);
        const Fp c = q.q(u);
        Matrix<Fp> v(d, 1, q.proto());
        if (is_zero(a)) {
            if (is_zero(b)) continue;
            v = u + w.scaled((zero_like(c) - c) * inv_of(b));
        } else {
            auto root = fp_sqrt(b * b - Fp(4, p) * a * c);
            if (!root) continue;
            v = u + w.scaled((*root - b) * inv_of(Fp(2, p) * a));
        }
        if (v.is_zero_matrix() || !is_zero(q.q(v))) continue;
        if ((q.gram() * v).is_zero_matrix()) continue;
        return v;
    }
}

// --------------------------------------------------------------------------
// 1. matrix factorization identity
// --------------------------------------------------------------------------
bool crit_mf(std::string& detail) {
    const std::uint64_t p = 10007;
    std::size_t done = 0;
    for (int i = 0; i < 200; ++i) {
        Rng rng(Rng::derive(0x1001, static_cast<std::uint64_t>(i)));
        const std::size_t n = 2 + rng.below(3);
        const std::size_t crk = rng.below(3);
        auto space = split_space<Fp>(n, crk, Fp(0, p), rng.next());
        auto w = max_isotropic_basis(space, static_cast<int>(rng.below(2)));
        MatrixFactorization<Fp> f{SpinorIdeal<Fp>(w)};
        f.check(random_vec(2 * n, rng, p));  // throws on any deviation
        ++done;
    }
    for (int i = 0; i < 20; ++i) {
        Rng rng(Rng::derive(0x1002, static_cast<std::uint64_t>(i)));
        const std::size_t n = 2 + rng.below(3);
        const std::size_t crk = rng.below(3);
        auto space = split_space<Rat>(n, crk, Rat(0), rng.next());
        auto w = max_isotropic_basis(space, static_cast<int>(rng.below(2)));
        MatrixFactorization<Rat> f{SpinorIdeal<Rat>(w)};
        f.check(random_vec_q(2 * n, rng));
        ++done;
    }
    detail = std::to_string(done) + " cases, exact";
    return done == 220;
}

// --------------------------------------------------------------------------
// 2. graded rank stabilization, m = 1
// --------------------------------------------------------------------------
bool crit_ranks(std::string& detail) {
    for (std::size_t n : {2u, 3u, 4u}) {
        const int k_max = static_cast<int>(2 * n) + 4;
        auto table = rank_stabilization_table(2 * n, 1, k_max);
        for (int k = 0; k <= k_max; ++k) {
            std::uint64_t closed = 0;
            for (int j = 0; 2 * j <= k; ++j)
                closed += binomial(2 * n, static_cast<std::uint64_t>(k - 2 * j));
            if (table.ranks[static_cast<std::size_t>(k)] != closed) {
                detail = "closed form mismatch at n=" + std::to_string(n) + ", k=" + std::to_string(k);
                return false;
            }
        }
        if (!table.stabilized || table.stable_value != (std::uint64_t{1} << (2 * n - 1))) {
            detail = "stabilization failed at n=" + std::to_string(n);
            return false;
        }
        for (int k = static_cast<int>(2 * n) - 1; k + 2 <= k_max; ++k)
            if (table.ranks[static_cast<std::size_t>(k + 2)] != table.ranks[static_cast<std::size_t>(k)]) {
                detail = "period-2 failure at n=" + std::to_string(n);
                return false;
            }
    }
    detail = "n = 2,3,4 up to k = 2n+4";
    return true;
}

// --------------------------------------------------------------------------
// 3. ideal dimensions, including the corank-2 (n+1)-dimensional case
// --------------------------------------------------------------------------
bool crit_ideal_dims(std::string& detail) {
    const std::uint64_t p = 10007;
    std::size_t cases = 0;
    for (std::size_t n : {2u, 3u, 4u})
        for (std::size_t crk : {0u, 1u, 2u}) {
            auto space = split_space<Fp>(n, crk, Fp(0, p), 0x300 + 10 * n + crk);
            for (std::size_t m = std::max<std::size_t>(crk, 1); m <= n; ++m) {
                SpinorIdeal<Fp> ideal(max_isotropic_basis(space, static_cast<int>(m % 2), m));
                const std::size_t expect = std::size_t{1} << (2 * n - m - 1);
                if (ideal.dim_even() != expect || ideal.dim_odd() != expect) {
                    detail = "2^{2n-m-1} failed at n=" + std::to_string(n) +
                             ", corank=" + std::to_string(crk) + ", m=" + std::to_string(m);
                    return false;
                }
                ++cases;
            }
            if (crk == 2) {
                SpinorIdeal<Fp> ideal(max_isotropic_basis(space, 0, n + 1));
                const std::size_t expect = std::size_t{1} << (n - 2);
                if (ideal.dim_even() != expect || ideal.dim_odd() != expect) {
                    detail = "2^{n-2} failed for m=n+1 at n=" + std::to_string(n);
                    return false;
                }
                ++cases;
            }
        }
    detail = std::to_string(cases) + " (n, corank, m) combinations";
    return true;
}

// --------------------------------------------------------------------------
// 4. graded ideal stabilization for n = 2, 3
// --------------------------------------------------------------------------
bool crit_graded_ideals(std::string& detail) {
    const std::uint64_t p = 10007;
    for (std::size_t n : {2u, 3u}) {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            auto space = split_space<Fp>(n, 0, Fp(0, p), 0x400 + seed);
            auto w = max_isotropic_basis(space, static_cast<int>(seed % 2));
            auto table = graded_ideal_dims(w, 0, static_cast<int>(2 * n) + 4);
            for (std::size_t i = 0; i + 1 < table.dims.size(); ++i)
                if (table.dims[i] > table.dims[i + 1]) {
                    detail = "dims not nondecreasing at n=" + std::to_string(n);
                    return false;
                }
            if (!table.stabilized_from_2n_minus_1) {
                detail = "no stabilization from 2n-1 at n=" + std::to_string(n);
                return false;
            }
            for (std::size_t i = 2 * n - 1; i < table.shift_matches.size(); ++i)
                if (!table.shift_matches[i]) {
                    detail = "h-shift mismatch at n=" + std::to_string(n) + ", k=" + std::to_string(i);
                    return false;
                }
        }
    }
    detail = "n = 2,3, three spaces each, k up to 2n+4";
    return true;
}

// --------------------------------------------------------------------------
// 5. Lemma composition scalars
// --------------------------------------------------------------------------
bool crit_lemma(std::string& detail) {
    const std::uint64_t p = 10007;
    int done = 0;
    std::uint64_t attempt = 0;
    while (done < 50) {
        Rng rng(Rng::derive(0x500, attempt++));
        if (attempt > 400) {
            detail = "could not assemble 50 even-codimension pairs";
            return false;
        }
        const std::size_t n = 2 + rng.below(3);
        const std::size_t crk = rng.below(3);
        auto space = split_space<Fp>(n, crk, Fp(0, p), rng.next());
        // image of W maximal in V/rad, the configuration the moduli uses
        auto w = isotropic_with_radical_meet(space, static_cast<int>(rng.below(2)),
                                             std::min<std::size_t>(crk, 1));
        Matrix<Fp> iso = random_even_isometry(*space, rng, 2 + 2 * static_cast<int>(rng.below(2)));
        IsotropicSubspace<Fp> w2(space, w.basis() * iso.transpose());
        // the Lemma's hypothesis: even codimension; for corank >= 1 the
        // isometry orbit contains both parities, so filter
        if ((w.dim() - subspace_meet_dim(w.basis(), w2.basis())) % 2 != 0) continue;
        auto res = lemma_iso_maps(w, w2);  // scalar-matrix assertion inside
        if (is_zero(res.scalar) || is_zero(res.pairing_det)) {
            detail = "same-family scalar vanished at attempt " + std::to_string(attempt);
            return false;
        }
        ++done;
    }
    // constructed degenerate pairs on the split dim-8 space: scalar = 0
    // exactly when the complement pairing determinant is 0
    auto hyp = split_space<Fp>(4, 0, Fp(0, p), 0x501);
    const auto& fr = *hyp->frame();
    auto pick = [&](std::vector<std::pair<int, bool>> pattern) {
        Matrix<Fp> rows(pattern.size(), 8, Fp(0, p));
        for (std::size_t r = 0; r < pattern.size(); ++r) {
            Matrix<Fp> v = pattern[r].second ? fr.f(static_cast<std::size_t>(pattern[r].first))
                                             : fr.e(static_cast<std::size_t>(pattern[r].first));
            for (std::size_t j = 0; j < 8; ++j) rows.at(r, j) = v.at(j, 0);
        }
        return IsotropicSubspace<Fp>(hyp, rows);
    };
    auto we = pick({{0, false}, {1, false}});
    struct Pair {
        IsotropicSubspace<Fp> wp;
        bool det_zero;
    };
    std::vector<Pair> pairs = {
        {pick({{2, false}, {3, false}}), true},   // all pairings vanish
        {pick({{0, true}, {1, true}}), false},    // f1, f2
        {pick({{2, false}, {0, true}}), true},    // e3, f1: rank-1 pairing block
        {pick({{2, true}, {3, true}}), true},     // f3, f4
        {pick({{0, true}, {2, false}}), true},    // f1, e3 (order swapped)
        {pick({{1, true}, {0, true}}), false},    // f2, f1
        {pick({{3, false}, {2, false}}), true},   // e4, e3
        {pick({{0, true}, {3, true}}), true},     // f1, f4
        {pick({{1, false}, {0, false}}), false},  // e2, e1: same subspace as W
        {pick({{3, true}, {2, true}}), true},     // f4, f3
    };
    int idx = 0;
    for (const auto& pr : pairs) {
        auto res = lemma_iso_maps(we, pr.wp);
        if (is_zero(res.pairing_det) != pr.det_zero || is_zero(res.scalar) != pr.det_zero) {
            detail = "degenerate pair " + std::to_string(idx) + ": scalar/det mismatch";
            return false;
        }
        ++idx;
    }
    detail = "50 randomized pairs, 10 constructed degenerate pairs";
    return true;
}

// --------------------------------------------------------------------------
// 6. module simplicity
// --------------------------------------------------------------------------
bool crit_hom(std::string& detail) {
    const std::uint64_t p = 10007;
    for (int i = 0; i < 30; ++i) {
        Rng rng(Rng::derive(0x600, static_cast<std::uint64_t>(i)));
        const int mode = i % 4;  // smooth n=2, smooth n=3, corank1 n=3, corank2 n=3
        const std::size_t n = (mode == 0) ? 2 : 3;
        const std::size_t crk = (mode <= 1) ? 0 : static_cast<std::size_t>(mode - 1);
        auto space = split_space<Fp>(n, crk, Fp(0, p), rng.next());
        const std::size_t meet = std::min<std::size_t>(crk, 1);
        SpinorIdeal<Fp> i0(isotropic_with_radical_meet(space, 0, meet));
        SpinorIdeal<Fp> i1(isotropic_with_radical_meet(space, 1, meet));
        if (module_hom_dim(i0, i0) != 1 || module_hom_dim(i1, i1) != 1) {
            detail = "End(I) != 1 at case " + std::to_string(i);
            return false;
        }
        if (crk == 0 && (module_hom_dim(i0, i1) != 0 || module_hom_dim(i1, i0) != 0)) {
            detail = "opposite-family hom != 0 at case " + std::to_string(i);
            return false;
        }
    }
    detail = "30 cases: smooth n=2,3 and corank 1,2 at n=3";
    return true;
}

// --------------------------------------------------------------------------
// 7. short exact sequence
// --------------------------------------------------------------------------
bool crit_ses(std::string& detail) {
    const std::uint64_t p = 10007;
    for (int i = 0; i < 10; ++i) {
        Rng rng(Rng::derive(0x700, static_cast<std::uint64_t>(i)));
        auto space = split_space<Fp>(3, 0, Fp(0, p), rng.next());
        const int hint = static_cast<int>(rng.below(2));
        auto wp = max_isotropic_basis(space, hint);
        auto wpp = max_isotropic_basis(space, 1 - hint);
        IsotropicSubspace<Fp> w(space, wp.basis().submatrix(0, 0, 2, 6));
        auto rep = ses_check(w, wp, wpp, rng.next());
        if (!rep.passed() || !rep.additivity_ok()) {
            detail = "positive configuration failed at case " + std::to_string(i) + ": " + rep.detail;
            return false;
        }
    }
    for (int i = 0; i < 5; ++i) {
        Rng rng(Rng::derive(0x701, static_cast<std::uint64_t>(i)));
        auto space = split_space<Fp>(3, 0, Fp(0, p), rng.next());
        auto wp = max_isotropic_basis(space, 0);
        Matrix<Fp> iso = random_even_isometry(*space, rng, 2);
        IsotropicSubspace<Fp> wpp_same(space, wp.basis() * iso.transpose());
        IsotropicSubspace<Fp> w(space, wp.basis().submatrix(0, 0, 2, 6));
        auto rep = ses_check(w, wp, wpp_same, rng.next());
        if (rep.quotient_iso_ok) {
            detail = "wrong-family control passed the quotient check at case " + std::to_string(i);
            return false;
        }
    }
    detail = "10 positive configurations, 5 wrong-family controls";
    return true;
}

// --------------------------------------------------------------------------
// 8. discriminant degree 2n
// --------------------------------------------------------------------------
bool crit_disc(std::string& detail) {
    const std::array<std::pair<std::size_t, std::size_t>, 20> shapes = {{
        {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {3, 4}, {4, 2}, {4, 3}, {4, 4}, {2, 2},
        {3, 3}, {4, 4}, {2, 4}, {3, 2}, {4, 3}, {2, 3}, {3, 4}, {4, 2}, {3, 3}, {4, 4},
    }};
    for (std::size_t idx = 0; idx < shapes.size(); ++idx) {
        const auto [n, m] = shapes[idx];
        auto sys = system_from_spaces(
            random_system<Fp>(n, m, Fp(0, 10007), 0x800 + static_cast<std::uint64_t>(idx)));
        auto rep = discriminant(sys, 0x801 + static_cast<std::uint64_t>(idx));
        if (rep.degree != static_cast<int>(2 * n) || rep.degenerate) {
            detail = "degree != 2n at case " + std::to_string(idx);
            return false;
        }
        Rng rng(Rng::derive(0x802, static_cast<std::uint64_t>(idx)));
        for (int t = 0; t < 20; ++t) {
            std::vector<Fp> lam;
            for (std::size_t j = 0; j < m; ++j) lam.push_back(rng.fp(10007));
            if (!(rep.poly.eval(lam) == sys.member(lam).det())) {
                detail = "re-evaluation mismatch at case " + std::to_string(idx);
                return false;
            }
        }
    }
    detail = "20 systems across m = 2,3,4 and n = 2,3,4, 20 extra points each";
    return true;
}

// --------------------------------------------------------------------------
// 9. stratification codimension behavior at p = 11
// --------------------------------------------------------------------------
bool crit_strata(std::string& detail) {
    // "Random systems" here means random general systems, in the
    // operationalized sense (corank <= 1 on pencils and nets, corank <= 2 on
    // webs). Non-general samples at p = 11 are finite-field accidents of
    // density ~p^{-3}; they are rejected and counted, and the rejection
    // budget is itself an assertion: were the corank-2 stratum codimension
    // 1 or 2, most nets would be rejected and the budget would blow.
    const std::array<std::pair<std::size_t, std::size_t>, 10> shapes = {{
        {2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {4, 3}, {2, 4}, {3, 4}, {4, 4}, {4, 4},
    }};
    int accepted = 0, rejected = 0, corank1_systems = 0;
    std::uint64_t attempt = 0;
    while (accepted < 20) {
        if (rejected > 8) {
            detail = "too many non-general samples (" + std::to_string(rejected) +
                     "); the codimension claim looks wrong";
            return false;
        }
        const auto [n, m] = shapes[static_cast<std::size_t>(accepted) % shapes.size()];
        auto sys = system_from_spaces(random_system<Fp>(n, m, Fp(0, 11), Rng::derive(0x900, attempt++)));
        auto rep = strata_scan(sys, 11);
        std::uint64_t expect_total = 0, pw = 1;
        for (std::size_t i = 0; i < m; ++i) {
            expect_total += pw;
            pw *= 11;
        }
        if (rep.total() != expect_total) {
            detail = "total count wrong at attempt " + std::to_string(attempt);
            return false;
        }
        const bool general = (m <= 3) ? (rep.counts.count(2) == 0) : !rep.corank3_seen;
        if (!general) {
            ++rejected;
            continue;
        }
        if (rep.counts.count(1)) ++corank1_systems;
        ++accepted;
    }
    // the corank-1 stratum is codimension 1: it shows up all over the place,
    // which is the contrast making the corank-2 zeros meaningful
    if (corank1_systems < 10) {
        detail = "corank-1 members unexpectedly rare (" + std::to_string(corank1_systems) + "/20)";
        return false;
    }
    // planted corank-2 webs are always found
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::vector<Matrix<Fp>> grams;
        grams.push_back(random_split_space<Fp>(4, 2, Fp(0, 11), 0x910 + seed).gram());
        for (std::uint64_t t = 1; t < 4; ++t)
            grams.push_back(random_quadratic_space<Fp>(4, Fp(0, 11), Rng::derive(0x920 + seed, t)).gram());
        LinearSystem<Fp> web(4, std::move(grams));
        auto rep = strata_scan(web, 11);
        bool found = false;
        if (rep.witness.count(2))
            for (const auto& lam : rep.witness.at(2))
                found |= (lam[0] == Fp(1, 11) && is_zero(lam[1]) && is_zero(lam[2]) && is_zero(lam[3]));
        if (!found) {
            detail = "planted corank-2 member missed at seed " + std::to_string(seed);
            return false;
        }
    }
    detail = "20 general systems (" + std::to_string(rejected) + " rejected), " +
             std::to_string(corank1_systems) + " with corank-1 members, 5 planted webs";
    return true;
}

// --------------------------------------------------------------------------
// 10. double cover reports
// --------------------------------------------------------------------------
bool crit_cover(std::string& detail) {
    int squarefree = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 2 + seed % 3;
        auto pencil = system_from_spaces(random_system<Fp>(n, 2, Fp(0, 10007), 0xa00 + seed));
        auto rep = double_cover_report(pencil, 0xa01 + seed);
        if (rep.branch_smooth) ++squarefree;
        if (!rep.methods_agree) {
            detail = "pencil methods disagreed at seed " + std::to_string(seed);
            return false;
        }
    }
    if (squarefree < 19) {
        detail = "only " + std::to_string(squarefree) + "/20 pencils squarefree";
        return false;
    }
    // Webs over an enumerable field. "General" includes the spec's screen
    // that no singular member's radical meets the base locus; at small p a
    // random web violates that with density ~deg/p, and at such a member the
    // branch divisor is genuinely singular without the corank rising, so the
    // two candidate methods measure different sets. Screened samples must be
    // common (budgeted), and on them the methods must agree exactly.
    int webs_done = 0, webs_rejected = 0;
    std::uint64_t attempt = 0;
    while (webs_done < 10) {
        if (webs_rejected > 10) {
            detail = "too many webs with radicals on the base locus";
            return false;
        }
        auto web = system_from_spaces(random_system<Fp>(4, 4, Fp(0, 53), Rng::derive(0xa10, attempt++)));
        bool kernel_on_x = false;
        quadspin::detail::enumerate_projective(4, 53, [&](const std::vector<Fp>& lam) {
            if (kernel_on_x) return;
            Matrix<Fp> member = web.member(lam);
            Matrix<Fp> ker = member.kernel_basis();
            if (ker.cols() == 0) return;
            for (std::size_t c = 0; c < ker.cols(); ++c) {
                bool on_x = true;
                for (std::size_t t = 0; t < 4 && on_x; ++t)
                    on_x &= is_zero(web.q_at(t, ker.col(c)));
                kernel_on_x |= on_x;
            }
        });
        if (kernel_on_x) {
            ++webs_rejected;
            continue;
        }
        auto rep = double_cover_report(web, 0xa11 + attempt);
        if (!rep.methods_agree) {
            detail = "web methods disagreed at attempt " + std::to_string(attempt);
            return false;
        }
        ++webs_done;
    }
    detail = std::to_string(squarefree) + "/20 pencils squarefree; 10 general webs agreeing (" +
             std::to_string(webs_rejected) + " rejected)";
    return true;
}

// --------------------------------------------------------------------------
// 11. Koszul-dual complex exactness
// --------------------------------------------------------------------------
bool crit_complex(std::string& detail) {
    std::size_t points_checked = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto web = system_from_spaces(random_system<Fp>(4, 4, Fp(0, 10007), 0xb00 + seed));
        auto pts = base_locus_sample(web, 10, 0xb10 + seed);
        if (pts.size() < 10) {
            detail = "only " + std::to_string(pts.size()) + " base-locus points at web " +
                     std::to_string(seed);
            return false;
        }
        for (const auto& pt : pts) {
            auto rep = clifford_complex_exact_at(web, pt.v, 12);
            if (!rep.d0_injective) {
                detail = "d_0 not injective at web " + std::to_string(seed);
                return false;
            }
            for (int k = 1; k <= 12; ++k)
                if (rep.ranks[static_cast<std::size_t>(k)] +
                        rep.ranks[static_cast<std::size_t>(k - 1)] !=
                    rep.dims[static_cast<std::size_t>(k)]) {
                    detail = "rank identity failed at web " + std::to_string(seed) +
                             ", k=" + std::to_string(k);
                    return false;
                }
            ++points_checked;
        }
    }
    detail = std::to_string(points_checked) + " points, k = 1..12";
    return points_checked == 30;
}

// --------------------------------------------------------------------------
// 12. fiber-rank behavior
// --------------------------------------------------------------------------
bool crit_fiber(std::string& detail) {
    const std::uint64_t p = 10007;
    for (std::size_t n : {2u, 3u, 4u})
        for (std::size_t crk : {1u, 2u}) {
            Rng rng(Rng::derive(0xc00, 10 * n + crk));
            auto space = split_space<Fp>(n, crk, Fp(0, p), rng.next());
            auto w = max_isotropic_basis(space, 0);  // radical inside W
            MatrixFactorization<Fp> f{SpinorIdeal<Fp>(w)};
            std::size_t first = SIZE_MAX;
            for (int t = 0; t < 30; ++t) {
                auto v = smooth_point(*space, rng);
                const std::size_t fr = fiber_rank(f, v);
                if (first == SIZE_MAX) first = fr;
                if (fr != first) {
                    detail = "fiber rank jumped on smooth points, n=" + std::to_string(n);
                    return false;
                }
            }
            // points of PW ∩ Q_sing: random radical combinations
            Matrix<Fp> rad = radical_basis(*space);
            for (int t = 0; t < 5; ++t) {
                Matrix<Fp> v(2 * n, 1, Fp(0, p));
                bool nonzero = false;
                for (std::size_t c = 0; c < rad.cols(); ++c) {
                    Fp coeff = rng.fp(p);
                    nonzero |= !is_zero(coeff);
                    v = v + rad.col(c).scaled(coeff);
                }
                if (!nonzero) continue;
                if (!f.phi_of(v).is_zero_matrix() || fiber_rank(f, v) != f.ideal().dim_even()) {
                    detail = "singular-locus fiber rank wrong, n=" + std::to_string(n) +
                             ", corank=" + std::to_string(crk);
                    return false;
                }
            }
            if (first >= f.ideal().dim_even()) {
                detail = "smooth fiber rank not below dim I_ev, n=" + std::to_string(n);
                return false;
            }
        }
    detail = "coranks 1,2 at n = 2,3,4; 30 smooth points each";
    return true;
}

// --------------------------------------------------------------------------
// 13. CLI reproducibility and exit codes
// --------------------------------------------------------------------------
struct RunResult {
    int exit_code{-1};
    std::string out;
};

RunResult run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = cli + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

bool crit_cli(std::string& detail) {
    const char* cli = std::getenv("QUADSPIN_CLI");
    if (!cli) {
        detail = "QUADSPIN_CLI not set";
        return false;
    }
    const std::string tmp = "/tmp/quadspin_acceptance";
    std::filesystem::create_directories(tmp);
    const std::string sys_a = tmp + "/a.json", sys_b = tmp + "/b.json";

    if (run_cli(cli, "gen --n 4 --m 4 --field fp:10007 --seed 42 --out " + sys_a).exit_code != 0 ||
        run_cli(cli, "gen --n 4 --m 4 --field fp:10007 --seed 42 --out " + sys_b).exit_code != 0) {
        detail = "gen failed";
        return false;
    }
    if (read_file(sys_a) != read_file(sys_b)) {
        detail = "gen output not byte-identical";
        return false;
    }

    // schema pass + exit 0
    const std::string small = tmp + "/small.json";
    run_cli(cli, "gen --n 2 --m 2 --field fp:10007 --seed 7 --out " + small);
    auto pass = run_cli(cli, "verify " + small + " --suite mf --trials 20 --seed 9 --out " + tmp + "/rep.json");
    if (pass.exit_code != 0) {
        detail = "passing suite exited " + std::to_string(pass.exit_code);
        return false;
    }
    auto rep = nlohmann::json::parse(read_file(tmp + "/rep.json"));
    for (const char* key : {"meta", "cases", "passed", "failed", "pass"})
        if (!rep.contains(key)) {
            detail = std::string("report missing key ") + key;
            return false;
        }

    // planted mathematical failure -> exit 1
    auto doc = nlohmann::json::parse(read_file(small));
    doc["_expect"] = {{"ranks_stable_value", 9}};
    write_file(small, doc.dump(2));
    if (run_cli(cli, "verify " + small + " --suite ranks").exit_code != 1) {
        detail = "planted failure did not exit 1";
        return false;
    }

    // corrupted input -> exit 2
    const std::string bad = tmp + "/bad.json";
    write_file(bad, "{\"n\": 2, \"m\": 2, ");
    auto res = run_cli(cli, "verify " + bad + " --suite mf --trials 1 --seed 1");
    if (res.exit_code != 2 || res.out.find("byte") == std::string::npos) {
        detail = "corrupted input did not exit 2 with a byte offset";
        return false;
    }
    detail = "byte-identical gen, schema keys, exit codes 0/1/2";
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "matrix factorization identity", 30, crit_mf},
        {2, "graded rank stabilization", 5, crit_ranks},
        {3, "ideal dimensions", 10, crit_ideal_dims},
        {4, "graded ideal stabilization", 20, crit_graded_ideals},
        {5, "pairing-determinant composition scalars", 20, crit_lemma},
        {6, "module simplicity", 30, crit_hom},
        {7, "short exact sequence", 30, crit_ses},
        {8, "discriminant degree 2n", 60, crit_disc},
        {9, "stratification codimension behavior", 60, crit_strata},
        {10, "double cover reports", 60, crit_cover},
        {11, "Koszul-dual complex exactness", 120, crit_complex},
        {12, "fiber-rank behavior", 60, crit_fiber},
        {13, "CLI reproducibility and exit codes", 10, crit_cli},
    };

    int failures = 0;
    for (auto& crit : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = crit.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = secs < crit.budget_seconds;
        const bool pass = ok && in_budget;
        if (!pass) ++failures;
        std::printf("[%2d/13] %s (%.2fs/%.0fs) %s%s%s\n", crit.id, pass ? "PASS" : "FAIL", secs,
                    crit.budget_seconds, crit.name.c_str(), detail.empty() ? "" : ": ",
                    detail.c_str());
        std::fflush(stdout);
        if (ok && !in_budget) std::printf("        over time budget\n");
    }
    if (failures == 0)
        std::printf("all 13 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
