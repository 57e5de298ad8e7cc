// Parallel metric kernels against the serial reference on cipher-like data.

#include <benchmark/benchmark.h>

#include <random>

#include "chaofuzz/metrics.hpp"

namespace {

using namespace chaofuzz;

GrayImage random_image(std::size_t side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Bytes px(side * side);
    for (auto& p : px) p = static_cast<std::uint8_t>(rng());
    return GrayImage(side, side, std::move(px));
}

void BM_HistogramParallel(benchmark::State& state) {
    const auto img = random_image(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(metrics::histogram(img.pixels()));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_HistogramSerial(benchmark::State& state) {
    const auto img = random_image(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(metrics::serial::histogram(img.pixels()));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_CorrelationParallel(benchmark::State& state) {
    const auto img = random_image(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::correlation(img, metrics::Direction::Diagonal));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_CorrelationSerial(benchmark::State& state) {
    const auto img = random_image(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::serial::correlation(img, metrics::Direction::Diagonal));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}

void BM_NpcrUaciParallel(benchmark::State& state) {
    const auto a = random_image(static_cast<std::size_t>(state.range(0)), 3);
    const auto b = random_image(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::npcr(a, b));
        benchmark::DoNotOptimize(metrics::uaci(a, b));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(2 * a.size()));
}

void BM_NpcrUaciSerial(benchmark::State& state) {
    const auto a = random_image(static_cast<std::size_t>(state.range(0)), 3);
    const auto b = random_image(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::serial::npcr(a.pixels(), b.pixels()));
        benchmark::DoNotOptimize(metrics::serial::uaci(a.pixels(), b.pixels()));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(2 * a.size()));
}

}  // namespace

BENCHMARK(BM_HistogramParallel)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_HistogramSerial)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_CorrelationParallel)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_CorrelationSerial)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_NpcrUaciParallel)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_NpcrUaciSerial)->Arg(256)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
