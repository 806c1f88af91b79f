#include "polytree/fixtures.hpp"
#include "polytree/hom.hpp"
#include "polytree/tree.hpp"

#include <benchmark/benchmark.h>

using namespace polytree;

static void BM_NimStrategy(benchmark::State& state) {
  Tree t = nim_tree({static_cast<std::size_t>(state.range(0)), {1, 2}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(exists_map_from_y(t));
  }
}
BENCHMARK(BM_NimStrategy)->Arg(9)->Arg(30);

static void BM_Bisimilarity(benchmark::State& state) {
  Tree a = nim_tree({12, {1, 2}});
  Tree b = nim_tree({12, {1, 2, 3}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(bisimilar(a, b));
  }
}
BENCHMARK(BM_Bisimilarity);

static void BM_TensorCells(benchmark::State& state) {
  Tree cell = cell_tree();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tensor_tree(tensor_tree(cell, cell), cell));
  }
}
BENCHMARK(BM_TensorCells);

static void BM_HomEnumeration(benchmark::State& state) {
  Tree login = login_tree(1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_trunc_homs(login, login, 2));
  }
}
BENCHMARK(BM_HomEnumeration);

static void BM_HomCount(benchmark::State& state) {
  Tree login = login_tree(3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trunc_hom_count(login, login, 3));
  }
}
BENCHMARK(BM_HomCount);

static void BM_UnfoldRefinement(benchmark::State& state) {
  Machine ro = readonly_refinement();
  for (auto _ : state) {
    benchmark::DoNotOptimize(unfold_machine(ro, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_UnfoldRefinement)->Arg(3)->Arg(5);

BENCHMARK_MAIN();
