#include "polytree/poly.hpp"

#include <benchmark/benchmark.h>

using namespace polytree;

static void BM_EnumerateMaps(benchmark::State& state) {
  PolyCode p = PolyCode::from_dirs({2, 1, 0});
  PolyCode q = PolyCode::from_dirs({2, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_maps(p, q));
  }
}
BENCHMARK(BM_EnumerateMaps);

static void BM_ComposeMaps(benchmark::State& state) {
  PolyCode w = PolyCode::from_dirs({2, 0});
  auto maps = enumerate_maps(w, w);
  for (auto _ : state) {
    for (const auto& f : maps) {
      for (const auto& g : maps) {
        benchmark::DoNotOptimize(compose_poly_maps(f, g));
      }
    }
  }
}
BENCHMARK(BM_ComposeMaps);

static void BM_IhomPoly(benchmark::State& state) {
  PolyCode p = PolyCode::from_dirs({2, 1, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ihom_poly(p, p));
  }
}
BENCHMARK(BM_IhomPoly);

static void BM_MapRank(benchmark::State& state) {
  PolyCode p = PolyCode::from_dirs({2, 1, 0});
  auto maps = enumerate_maps(p, p);
  for (auto _ : state) {
    for (const auto& f : maps) benchmark::DoNotOptimize(poly_map_rank(f));
  }
}
BENCHMARK(BM_MapRank);
