#include <benchmark/benchmark.h>

#include "quadspin/linsys.hpp"

using namespace quadspin;

namespace {

SpacePtr<Fp> bench_space(std::size_t n, std::uint64_t seed) {
    return std::make_shared<QuadraticSpace<Fp>>(random_split_space<Fp>(n, 0, Fp(0, 10007), seed));
}

CliffordElement<Fp> dense_element(const SpacePtr<Fp>& s, Rng& rng) {
    CliffordElement<Fp> e(s);
    for (std::uint32_t t = 0; t < (1u << s->dim()); t += 3)
        e.add(t, rng.fp(10007));
    return e;
}

void BM_CliffordMulDim8(benchmark::State& state) {
    auto s = bench_space(4, 1);
    Rng rng(2);
    auto a = dense_element(s, rng);
    auto b = dense_element(s, rng);
    for (auto _ : state) benchmark::DoNotOptimize(clifford_mul(a, b));
}
BENCHMARK(BM_CliffordMulDim8);

void BM_IdealBuild(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto s = bench_space(n, 3);
    auto w = max_isotropic_basis(s, 0);
    for (auto _ : state) benchmark::DoNotOptimize(SpinorIdeal<Fp>(w));
}
BENCHMARK(BM_IdealBuild)->Arg(2)->Arg(3)->Arg(4);

void BM_MatrixRankFp(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(4);
    Matrix<Fp> m(d, d, Fp(0, 10007));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m.at(i, j) = rng.fp(10007);
    for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_MatrixRankFp)->Arg(32)->Arg(128);

void BM_DiscriminantWeb(benchmark::State& state) {
    auto sys = system_from_spaces(random_system<Fp>(4, 4, Fp(0, 10007), 5));
    for (auto _ : state) benchmark::DoNotOptimize(det_of_linear_matrix(sys.grams(), 3, 6));
}
BENCHMARK(BM_DiscriminantWeb);

void BM_ComplexRankSplit(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    auto sys = system_from_spaces(random_system<Fp>(4, 4, Fp(0, 10007), 7));
    auto pts = base_locus_sample(sys, 1, 8);
    if (pts.empty()) {
        state.SkipWithError("no base-locus point");
        return;
    }
    // coordinates with the point first, as the report sets them up
    for (auto _ : state) {
        auto rep = clifford_complex_exact_at(sys, pts[0].v, k);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_ComplexRankSplit)->Arg(8)->Arg(12);

void BM_BaseLocusPointWeb(benchmark::State& state) {
    auto sys = system_from_spaces(random_system<Fp>(4, 4, Fp(0, 10007), 9));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto pts = base_locus_sample(sys, 1, ++seed);
        benchmark::DoNotOptimize(pts);
    }
}
BENCHMARK(BM_BaseLocusPointWeb);

void BM_StrataScanWebP11(benchmark::State& state) {
    auto sys = system_from_spaces(random_system<Fp>(4, 4, Fp(0, 11), 10));
    for (auto _ : state) benchmark::DoNotOptimize(strata_scan(sys, 11));
}
BENCHMARK(BM_StrataScanWebP11);

}  // namespace

BENCHMARK_MAIN();
