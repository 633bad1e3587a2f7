#include <benchmark/benchmark.h>

#include <random>

#include "gl2/bfs.hpp"

namespace {

using gl2::IsometryGroup;

std::vector<gl2::BitMatrix> sample(int n, int count) {
  std::mt19937_64 rng(7);
  const std::uint64_t mask = n == 8 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n * n)) - 1;
  std::vector<gl2::BitMatrix> out;
  while (static_cast<int>(out.size()) < count) {
    const auto m = gl2::BitMatrix::unchecked(n, rng() & mask);
    if (m.is_invertible()) out.push_back(m);
  }
  return out;
}

void BM_BfsSerialReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gl2::isometry_bfs_serial(n, IsometryGroup::Sym));
  }
}

void BM_BfsSerialFast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gl2::isometry_bfs_serial(n, IsometryGroup::Sym, std::nullopt, gl2::Canonicalizer::Fast));
  }
}

void BM_BfsParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gl2::SearchLimits lim;
  lim.threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gl2::isometry_bfs(n, IsometryGroup::Sym, lim));
  }
}

void BM_CanonicalizeReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ms = sample(n, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gl2::canonicalize_reference(ms[i++ % ms.size()], IsometryGroup::Sym));
  }
}

void BM_Canonicalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ms = sample(n, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gl2::canonicalize(ms[i++ % ms.size()], IsometryGroup::Sym));
  }
}

}  // namespace

BENCHMARK(BM_BfsSerialReference)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BfsSerialFast)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BfsParallel)->Args({4, 1})->Args({4, 4})->Args({5, 1})->Args({5, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalizeReference)->DenseRange(4, 8, 2);
BENCHMARK(BM_Canonicalize)->DenseRange(4, 8, 2);

BENCHMARK_MAIN();
