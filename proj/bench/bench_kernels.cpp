#include "weyl/kernels.hpp"
#include "weyl/lattice.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace weyl;

const std::vector<DualPoint>& modes() {
  static const auto m = enumerate_dual(Lattice::square(2, kTwoPi), 400.0);
  return m;
}

Vec offset() {
  Vec w(2);
  w << 0.31, -0.17;
  return w;
}

void BM_ModeSumSerial(benchmark::State& st) {
  const Vec w = offset();
  (void)modes();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::mode_sum(modes(), w, DerivIndex::along(0, 1, 1)));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(modes().size()));
}

void BM_ModeSumOmp(benchmark::State& st) {
  const Vec w = offset();
  (void)modes();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::mode_sum(modes(), w, DerivIndex::along(0, 1, 1)));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(modes().size()));
}

void BM_WeightedCosSerial(benchmark::State& st) {
  std::vector<double> wts(modes().size());
  for (std::size_t i = 0; i < wts.size(); ++i) wts[i] = std::exp(-1e-5 * static_cast<double>(i));
  const Vec w = offset();
  (void)modes();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::weighted_cos_sum(modes(), wts, w));
}

void BM_WeightedCosOmp(benchmark::State& st) {
  std::vector<double> wts(modes().size());
  for (std::size_t i = 0; i < wts.size(); ++i) wts[i] = std::exp(-1e-5 * static_cast<double>(i));
  const Vec w = offset();
  (void)modes();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::weighted_cos_sum(modes(), wts, w));
}

void BM_PrefixSerial(benchmark::State& st) {
  std::vector<std::size_t> ends;
  for (std::size_t e = 0; e <= modes().size(); e += modes().size() / 30) ends.push_back(e);
  const Vec w = offset();
  (void)modes();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::prefix_mode_sums(modes(), w, {}, ends));
}

void BM_PrefixOmp(benchmark::State& st) {
  std::vector<std::size_t> ends;
  for (std::size_t e = 0; e <= modes().size(); e += modes().size() / 30) ends.push_back(e);
  const Vec w = offset();
  (void)modes();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::prefix_mode_sums(modes(), w, {}, ends));
}

}  // namespace

BENCHMARK(BM_ModeSumSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModeSumOmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedCosSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedCosOmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrefixSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrefixOmp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
