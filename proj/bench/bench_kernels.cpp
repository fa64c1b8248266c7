// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to the
// thread count of interest, e.g.
//   OMP_NUM_THREADS=8 ./build/bench/qwalk_bench --benchmark_filter=Rhs

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "qwalk/kernels.hpp"

namespace {

using qwalk::kernels::cplx;

std::vector<cplx> random_matrix(int n) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::vector<cplx> m(static_cast<std::size_t>(n) * n);
  for (auto& v : m) v = {g(rng), g(rng)};
  return m;
}

std::vector<double> random_coeffs(int n) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(n));
  for (auto& v : c) v = u(rng);
  return c;
}

void BM_RhsSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = random_matrix(n);
  std::vector<cplx> out(rho.size());
  for (auto _ : state) {
    qwalk::kernels::dephasing_rhs_serial(n, 3, 0.25, 20.0, rho, out);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n) * n);
}

void BM_RhsParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = random_matrix(n);
  std::vector<cplx> out(rho.size());
  for (auto _ : state) {
    qwalk::kernels::dephasing_rhs_parallel(n, 3, 0.25, 20.0, rho, out);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n) * n);
}

void BM_CosineSeriesSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = random_coeffs(n);
  std::vector<double> out(c.size());
  for (auto _ : state) {
    qwalk::kernels::cosine_series_serial(c, 0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_CosineSeriesParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = random_coeffs(n);
  std::vector<double> out(c.size());
  for (auto _ : state) {
    qwalk::kernels::cosine_series_parallel(c, 0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_RhsSerial)->RangeMultiplier(4)->Range(16, 512);
BENCHMARK(BM_RhsParallel)->RangeMultiplier(4)->Range(16, 512);
BENCHMARK(BM_CosineSeriesSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_CosineSeriesParallel)->RangeMultiplier(4)->Range(64, 4096);

BENCHMARK_MAIN();
