#include <benchmark/benchmark.h>

#include "fusionmod/catalog.hpp"
#include "fusionmod/dual.hpp"
#include "fusionmod/enumerate.hpp"
#include "fusionmod/expr.hpp"

using namespace fusionmod;

static void BM_Enumerate(benchmark::State& state, const char* name, bool prefilter) {
  auto R = catalog_ring(name);
  EnumerationConfig cfg;
  cfg.worker_count = 1;
  cfg.dim_prefilter = prefilter;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_modules(R, cfg));
}
BENCHMARK_CAPTURE(BM_Enumerate, HI_Z4, "HI-Z4", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Enumerate, HI_Z2xZ2, "HI-Z2xZ2", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Enumerate, 4442, "4442", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Enumerate, 2D2, "2D2", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Enumerate, RepA4_direct, "RepA4", false)->Unit(benchmark::kMillisecond);

static void BM_DualRegular(benchmark::State& state, const char* name) {
  auto K = regular_module(catalog_ring(name));
  for (auto _ : state) benchmark::DoNotOptimize(dual_rings(K));
}
BENCHMARK_CAPTURE(BM_DualRegular, HI_Z4, "HI-Z4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DualRegular, 4442, "4442")->Unit(benchmark::kMillisecond);

static void BM_Commutant(benchmark::State& state) {
  auto K = regular_module(catalog_ring("C2"));
  for (auto _ : state) benchmark::DoNotOptimize(commutant_basis(K));
}
BENCHMARK(BM_Commutant)->Unit(benchmark::kMillisecond);

static void BM_FpDims(benchmark::State& state, const char* name) {
  auto R = catalog_ring(name);
  for (auto _ : state) benchmark::DoNotOptimize(fp_dims(*R));
}
BENCHMARK_CAPTURE(BM_FpDims, HI_Z2xZ2, "HI-Z2xZ2");
BENCHMARK_CAPTURE(BM_FpDims, C2, "C2");

static void BM_Parse(benchmark::State& state) {
  auto R = catalog_ring("4442");
  const std::string src = "Lambda(1+2*x)+b(1+6*x)+(al+al2)*(x+bx)";
  for (auto _ : state) benchmark::DoNotOptimize(parse_object(R, src));
}
BENCHMARK(BM_Parse);

BENCHMARK_MAIN();
