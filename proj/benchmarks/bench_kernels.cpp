#include <benchmark/benchmark.h>

#include "dnmc/random.hpp"
#include "dnmc/scan.hpp"
#include "dnmc/tensor.hpp"
#include "dnmc/transform.hpp"

namespace {

using namespace dnmc;

Tensor random_sequence(std::size_t t, std::size_t d) {
    Rng rng(11);
    Tensor seq({t, d});
    for (auto& x : seq.data) x = rng.normal();
    return seq;
}

void BM_RotationApply(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    const BlockRotation r = random_block_rotation(rng, d);
    const Vec v = random_vec(rng, d);
    for (auto _ : state) benchmark::DoNotOptimize(r.apply(v));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RotationApply)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_DenseApply(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    const DenseTransform r(random_orthogonal(rng, d));
    const Vec v = random_vec(rng, d);
    for (auto _ : state) benchmark::DoNotOptimize(r.apply(v));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseApply)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_RotationCompose(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    const BlockRotation a = random_block_rotation(rng, d);
    const BlockRotation b = random_block_rotation(rng, d);
    for (auto _ : state) benchmark::DoNotOptimize(a.compose(b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RotationCompose)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_DenseCompose(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    const DenseTransform a(random_orthogonal(rng, d));
    const DenseTransform b(random_orthogonal(rng, d));
    for (auto _ : state) benchmark::DoNotOptimize(a.compose(b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseCompose)->RangeMultiplier(4)->Range(16, 256)->Complexity();

void BM_ScanRotation(benchmark::State& state) {
    const auto t = static_cast<std::size_t>(state.range(0));
    const Tensor seq = random_sequence(t, 64);
    Rng rng(3);
    const Transform r{random_block_rotation(rng, 64)};
    for (auto _ : state) benchmark::DoNotOptimize(scan_sequence(seq, r));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ScanRotation)->RangeMultiplier(4)->Range(1 << 8, 1 << 16);

void BM_ScanDense(benchmark::State& state) {
    const auto t = static_cast<std::size_t>(state.range(0));
    const Tensor seq = random_sequence(t, 64);
    Rng rng(3);
    const Transform r{DenseTransform(random_orthogonal(rng, 64))};
    for (auto _ : state) benchmark::DoNotOptimize(scan_sequence(seq, r));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ScanDense)->RangeMultiplier(4)->Range(1 << 8, 1 << 12);

void BM_PrefixSequential(benchmark::State& state) {
    const auto t = static_cast<std::size_t>(state.range(0));
    const Tensor seq = random_sequence(t, 64);
    Rng rng(4);
    const Transform r{random_block_rotation(rng, 64)};
    for (auto _ : state) benchmark::DoNotOptimize(prefix_scan_sequential(seq, r));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_PrefixSequential)->Arg(1 << 16)->Arg(1 << 20);

void BM_PrefixParallel(benchmark::State& state) {
    const auto t = static_cast<std::size_t>(state.range(0));
    const auto workers = static_cast<unsigned>(state.range(1));
    const Tensor seq = random_sequence(t, 64);
    Rng rng(4);
    const Transform r{random_block_rotation(rng, 64)};
    const PrefixOptions opt{.chunk = t / workers, .workers = workers};
    for (auto _ : state) benchmark::DoNotOptimize(prefix_scan_parallel(seq, r, opt));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_PrefixParallel)
    ->Args({1 << 16, 2})
    ->Args({1 << 16, 4})
    ->Args({1 << 20, 2})
    ->Args({1 << 20, 4})
    ->UseRealTime();

} // namespace

BENCHMARK_MAIN();
