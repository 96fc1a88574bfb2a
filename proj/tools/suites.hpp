#ifndef QUADSPIN_TOOLS_SUITES_HPP
#define QUADSPIN_TOOLS_SUITES_HPP

#include <atomic>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "quadspin/linsys.hpp"
#include "quadspin/system_io.hpp"

namespace quadspin::cli {

using nlohmann::ordered_json;

struct CaseResult {
    std::size_t index{0};
    ordered_json inputs;
    std::string expected;
    std::string got;
    bool pass{false};
};

struct SuiteResult {
    std::string suite;
    std::vector<CaseResult> cases;
    std::vector<std::string> notes;

    std::size_t failed() const {
        std::size_t n = 0;
        for (const auto& c : cases) n += c.pass ? 0 : 1;
        return n;
    }
    bool pass() const { return failed() == 0; }
};

// Runs fn(i) for i = 0..count-1 on `jobs` threads; results land at their own
// indices, so output order never depends on scheduling.
inline void parallel_cases(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

inline std::vector<Fp> fp_vector(const Matrix<Fp>& col) {
    std::vector<Fp> v;
    for (std::size_t i = 0; i < col.rows(); ++i) v.push_back(col.at(i, 0));
    return v;
}

inline ordered_json lambda_json(const std::vector<Fp>& lam) {
    ordered_json a = ordered_json::array();
    for (const auto& x : lam) a.push_back(x.v);
    return a;
}

inline ordered_json vec_json(const Matrix<Fp>& col) {
    ordered_json a = ordered_json::array();
    for (std::size_t i = 0; i < col.rows(); ++i) a.push_back(col.at(i, 0).v);
    return a;
}

// A split member of the system: random λ until the member has the requested
// corank (0 is the generic choice) and splits. Gives up after `tries`.
inline std::optional<std::pair<std::vector<Fp>, SpacePtr<Fp>>> split_member(
    const LinearSystem<Fp>& sys, Rng& rng, int tries = 64) {
    const std::uint64_t p = sys.proto().p;
    for (int t = 0; t < tries; ++t) {
        std::vector<Fp> lam;
        bool nonzero = false;
        for (std::size_t i = 0; i < sys.m(); ++i) {
            lam.push_back(rng.fp(p));
            nonzero |= !is_zero(lam.back());
        }
        if (!nonzero) continue;
        auto space = std::make_shared<QuadraticSpace<Fp>>(sys.member(lam));
        if (corank(*space) != 0) continue;
        try {
            (void)max_isotropic_basis(SpacePtr<Fp>(space), 0);
        } catch (const NotSupportedError&) {
            continue;
        }
        return std::make_pair(lam, SpacePtr<Fp>(space));
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// The verify suites. Each case records inputs/expected/got; exceptions from
// the math layer fail the case rather than the process.
// ---------------------------------------------------------------------------

inline SuiteResult run_suite_mf(const LinearSystem<Fp>& sys, std::size_t trials,
                                std::uint64_t seed, int jobs) {
    SuiteResult res{"mf", std::vector<CaseResult>(trials), {}};
    parallel_cases(trials, jobs, [&](std::size_t i) {
        CaseResult& c = res.cases[i];
        c.index = i;
        c.expected = "phi(v)psi(v) = psi(v)phi(v) = q(v)*Id";
        Rng rng(Rng::derive(seed, i));
        auto member = split_member(sys, rng);
        if (!member) {
            c.got = "no split member found";
            return;
        }
        const int hint = static_cast<int>(rng.below(2));
        auto w = max_isotropic_basis(member->second, hint);
        MatrixFactorization<Fp> f{SpinorIdeal<Fp>(w)};
        Matrix<Fp> v(sys.dim_v(), 1, sys.proto());
        for (std::size_t r = 0; r < sys.dim_v(); ++r) v.at(r, 0) = rng.fp(sys.proto().p);
        c.inputs = {{"lambda", lambda_json(member->first)}, {"hint", hint}, {"v", vec_json(v)}};
        try {
            Fp qv = f.check(v);
            c.got = "ok, q(v) = " + std::to_string(qv.v);
            c.pass = true;
        } catch (const MathCheckError& e) {
            c.got = e.what();
        }
    });
    return res;
}

inline SuiteResult run_suite_lemma(const LinearSystem<Fp>& sys, std::size_t trials,
                                   std::uint64_t seed, int jobs) {
    SuiteResult res{"lemma", std::vector<CaseResult>(trials), {}};
    parallel_cases(trials, jobs, [&](std::size_t i) {
        CaseResult& c = res.cases[i];
        c.index = i;
        c.expected = "composition scalar nonzero, zero iff pairing det zero";
        Rng rng(Rng::derive(seed, i));
        auto member = split_member(sys, rng);
        if (!member) {
            c.got = "no split member found";
            return;
        }
        auto w = max_isotropic_basis(member->second, static_cast<int>(rng.below(2)));
        Matrix<Fp> iso = random_even_isometry(*member->second, rng, 2 + 2 * static_cast<int>(rng.below(2)));
        IsotropicSubspace<Fp> w2(member->second, w.basis() * iso.transpose());
        c.inputs = {{"lambda", lambda_json(member->first)}};
        try {
            auto lr = lemma_iso_maps(w, w2);
            const bool zero_iff = (is_zero(lr.scalar) == is_zero(lr.pairing_det));
            c.got = "scalar = " + scalar_str(lr.scalar) + ", det = " + scalar_str(lr.pairing_det);
            c.pass = !is_zero(lr.scalar) && zero_iff;
        } catch (const Error& e) {
            c.got = e.what();
        }
    });
    return res;
}

inline SuiteResult run_suite_ses(const LinearSystem<Fp>& sys, std::size_t trials,
                                 std::uint64_t seed, int jobs) {
    SuiteResult res{"ses", std::vector<CaseResult>(trials), {}};
    parallel_cases(trials, jobs, [&](std::size_t i) {
        CaseResult& c = res.cases[i];
        c.index = i;
        c.expected = "containment, halving, quotient iso to the opposite family";
        Rng rng(Rng::derive(seed, i));
        auto member = split_member(sys, rng);
        if (!member) {
            c.got = "no split member found";
            return;
        }
        const int hint = static_cast<int>(rng.below(2));
        auto wp = max_isotropic_basis(member->second, hint);
        auto wpp = max_isotropic_basis(member->second, 1 - hint);
        IsotropicSubspace<Fp> w(member->second,
                                wp.basis().submatrix(0, 0, wp.dim() - 1, sys.dim_v()));
        c.inputs = {{"lambda", lambda_json(member->first)}, {"hint", hint}};
        try {
            auto rep = ses_check(w, wp, wpp, rng.next());
            c.got = rep.passed() ? "ok" : rep.detail;
            c.pass = rep.passed() && rep.additivity_ok();
        } catch (const Error& e) {
            c.got = e.what();
        }
    });
    return res;
}

inline SuiteResult run_suite_hom(const LinearSystem<Fp>& sys, std::size_t trials,
                                 std::uint64_t seed, int jobs) {
    SuiteResult res{"hom", std::vector<CaseResult>(trials), {}};
    parallel_cases(trials, jobs, [&](std::size_t i) {
        CaseResult& c = res.cases[i];
        c.index = i;
        c.expected = "End(I) = 1 both families, cross-family homs 0";
        Rng rng(Rng::derive(seed, i));
        auto member = split_member(sys, rng);
        if (!member) {
            c.got = "no split member found";
            return;
        }
        c.inputs = {{"lambda", lambda_json(member->first)}};
        try {
            SpinorIdeal<Fp> i0(max_isotropic_basis(member->second, 0));
            SpinorIdeal<Fp> i1(max_isotropic_basis(member->second, 1));
            const std::size_t e0 = module_hom_dim(i0, i0);
            const std::size_t e1 = module_hom_dim(i1, i1);
            const std::size_t x01 = module_hom_dim(i0, i1);
            c.got = "End = " + std::to_string(e0) + "," + std::to_string(e1) +
                    "; cross = " + std::to_string(x01);
            c.pass = (e0 == 1 && e1 == 1 && x01 == 0);
        } catch (const Error& e) {
            c.got = e.what();
        }
    });
    return res;
}

inline SuiteResult run_suite_ranks(std::size_t dim_v, std::size_t m,
                                   const std::string& expect_json) {
    SuiteResult res{"ranks", {}, {}};
    const int k_max = static_cast<int>(dim_v) + 4;
    auto fiber = rank_stabilization_table(dim_v, 1, k_max);
    auto full = rank_stabilization_table(dim_v, m, k_max);
    for (int k = 0; k <= k_max; ++k) {
        CaseResult c;
        c.index = res.cases.size();
        const auto expect_fiber = graded_piece_dim(dim_v, 1, k);
        const auto expect_full = graded_piece_dim(dim_v, m, k);
        c.inputs = {{"k", k}};
        c.expected = "fiber " + std::to_string(expect_fiber) + ", system " +
                     std::to_string(expect_full);
        c.got = "fiber " + std::to_string(fiber.ranks[static_cast<std::size_t>(k)]) +
                ", system " + std::to_string(full.ranks[static_cast<std::size_t>(k)]);
        c.pass = fiber.ranks[static_cast<std::size_t>(k)] == expect_fiber &&
                 full.ranks[static_cast<std::size_t>(k)] == expect_full;
        res.cases.push_back(std::move(c));
    }
    {
        CaseResult c;
        c.index = res.cases.size();
        std::uint64_t stable = std::uint64_t{1} << (dim_v - 1);
        if (!expect_json.empty()) {
            auto j = nlohmann::json::parse(expect_json);
            if (j.contains("ranks_stable_value")) stable = j["ranks_stable_value"].get<std::uint64_t>();
        }
        c.inputs = {{"check", "stabilization"}};
        c.expected = "constant " + std::to_string(stable) + " from k = " +
                     std::to_string(dim_v - 1) + " with rank(k+2) = rank(k)";
        c.got = "stable value " + std::to_string(fiber.stable_value) +
                (fiber.stabilized ? ", stabilized" : ", not stabilized");
        c.pass = fiber.stabilized && fiber.stable_value == stable;
        res.cases.push_back(std::move(c));
    }
    return res;
}

inline SuiteResult run_suite_ideal_dims(const LinearSystem<Fp>& sys, std::size_t trials,
                                        std::uint64_t seed, int jobs,
                                        const std::string& expect_json) {
    const std::size_t n = sys.n();
    SuiteResult res{"ideal-dims", std::vector<CaseResult>(trials), {}};
    parallel_cases(trials, jobs, [&](std::size_t i) {
        CaseResult& c = res.cases[i];
        c.index = i;
        Rng rng(Rng::derive(seed, i));
        auto member = split_member(sys, rng);
        if (!member) {
            c.expected = "dim I_ev = dim I_odd = 2^{2n-m-1}";
            c.got = "no split member found";
            return;
        }
        const std::size_t mm = 1 + rng.below(n);
        std::size_t expect = std::size_t{1} << (2 * n - mm - 1);
        if (!expect_json.empty()) {
            auto j = nlohmann::json::parse(expect_json);
            const std::string key = "ideal_dim_m" + std::to_string(mm);
            if (j.contains(key)) expect = j[key].get<std::size_t>();
        }
        c.inputs = {{"lambda", lambda_json(member->first)}, {"dim_w", mm}};
        c.expected = "dim I_ev = dim I_odd = " + std::to_string(expect);
        try {
            auto w = max_isotropic_basis(member->second, static_cast<int>(rng.below(2)), mm);
            SpinorIdeal<Fp> ideal(w);
            c.got = "dim I_ev = " + std::to_string(ideal.dim_even()) +
                    ", dim I_odd = " + std::to_string(ideal.dim_odd());
            c.pass = ideal.dim_even() == expect && ideal.dim_odd() == expect;
        } catch (const Error& e) {
            c.got = e.what();
        }
    });
    return res;
}

inline SuiteResult run_suite_complex(const LinearSystem<Fp>& sys, std::size_t trials,
                                     std::uint64_t seed, int jobs) {
    SuiteResult res{"complex", {}, {}};
    const int k_max = static_cast<int>(sys.dim_v()) + 4;
    auto pts = base_locus_sample(sys, trials, seed);
    if (pts.empty()) {
        res.notes.push_back("no base-locus points found over this field within the budget");
        return res;
    }
    res.cases.resize(pts.size());
    parallel_cases(pts.size(), jobs, [&](std::size_t i) {
        CaseResult& c = res.cases[i];
        c.index = i;
        c.inputs = {{"v", vec_json(pts[i].v)}, {"smooth", pts[i].smooth}};
        c.expected = "rank(d_k) + rank(d_{k-1}) = dim A_k for 1 <= k <= " + std::to_string(k_max) +
                     ", d_0 injective";
        try {
            auto rep = clifford_complex_exact_at(sys, pts[i].v, k_max);
            c.pass = rep.exact();
            c.got = c.pass ? "exact" : "identity failed";
        } catch (const Error& e) {
            c.got = e.what();
        }
    });
    return res;
}

}  // namespace quadspin::cli

#endif
