#include "signreg/generators.hpp"
#include "signreg/preserver.hpp"
#include "signreg/vdp.hpp"

#include <benchmark/benchmark.h>

using namespace signreg;

static void BM_Determinant(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    const RationalMatrix a = random_matrix({n, n}, rng, 9, 7);
    for (auto _ : state) benchmark::DoNotOptimize(determinant(a));
}
BENCHMARK(BM_Determinant)->DenseRange(2, 8, 2);

static void BM_ClassifySSR(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    const RationalMatrix a = random_ssr({n, n}, rng);
    for (auto _ : state) benchmark::DoNotOptimize(classify(a));
}
BENCHMARK(BM_ClassifySSR)->DenseRange(2, 6, 1);

static void BM_FactorAccept(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(3);
    const MatrixSpaceMap op = compose_to_operator(random_chain({n, n}, rng, ChainFamily::SignRegular));
    for (auto _ : state) benchmark::DoNotOptimize(factor_preserver(op, PreserverMode::SR));
}
BENCHMARK(BM_FactorAccept)->DenseRange(2, 5, 1);

// Rejection includes the witness search.
static void BM_FactorReject(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Shape s{n, n};
    RationalMatrix L(s.cells(), s.cells());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) L(slot(s, i, (j + 1) % n), slot(s, i, j)) = 1;
    const MatrixSpaceMap op(s, L);
    for (auto _ : state) benchmark::DoNotOptimize(factor_preserver(op, PreserverMode::SR));
}
BENCHMARK(BM_FactorReject)->DenseRange(3, 5, 1);

static void BM_VdExhaustive(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const RationalMatrix a = pascal({n, n});
    const auto xs = exhaustive_sign_vectors(n);
    for (auto _ : state) benchmark::DoNotOptimize(vd_check(a, xs));
}
BENCHMARK(BM_VdExhaustive)->DenseRange(2, 5, 1);

BENCHMARK_MAIN();
