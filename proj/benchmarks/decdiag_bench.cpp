#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "decdiag/analysis.hpp"
#include "decdiag/completion.hpp"
#include "decdiag/measures.hpp"
#include "decdiag/multiset_order.hpp"

namespace {

using namespace decdiag;

std::vector<Label> chain_labels(std::size_t n) {
  std::vector<Label> r;
  for (std::size_t i = 0; i < n; ++i) r.emplace_back("l" + std::to_string(i));
  return r;
}

// l0 < l1 < ... < l(n-1)
Precedence chain(const std::vector<Label>& ls) {
  std::vector<LabelPair> pairs;
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) pairs.emplace_back(ls[i], ls[i + 1]);
  return Precedence::from_pairs(pairs);
}

void BM_MulLess(benchmark::State& state) {
  const auto ls = chain_labels(8);
  const Precedence p = chain(ls);
  LabelMultiset m, n;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    m.add(ls[static_cast<std::size_t>(i) % 7]);
    n.add(ls[static_cast<std::size_t>(i) % 7 + 1]);
  }
  for (auto _ : state) benchmark::DoNotOptimize(mul_less(p, m, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MulLess)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_Lexmax(benchmark::State& state) {
  const auto ls = chain_labels(8);
  const Precedence p = chain(ls);
  LabelSeq s;
  for (std::int64_t i = 0; i < state.range(0); ++i) s.push_back(ls[static_cast<std::size_t>(i * 5) % 8]);
  for (auto _ : state) benchmark::DoNotOptimize(lexmax(p, s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Lexmax)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

// A grid of diamonds: (i,j) -> (i+1,j) labeled by the row, (i,j) -> (i,j+1)
// by the column, ordered so every local peak closes decreasingly.
struct Grid {
  LabeledArs ars;
  Precedence prec;
  std::size_t size;
};

Obj cell(std::size_t i, std::size_t j) { return Obj{std::to_string(i) + "," + std::to_string(j)}; }

Grid grid(std::size_t n) {
  const Label down{"down"}, across{"across"};
  std::vector<Step> steps;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) {
      if (i < n) steps.push_back({cell(i, j), down, cell(i + 1, j)});
      if (j < n) steps.push_back({cell(i, j), across, cell(i, j + 1)});
    }
  return {LabeledArs(steps), Precedence{}, n};
}

void BM_CompletePeak(benchmark::State& state) {
  const Grid g = grid(static_cast<std::size_t>(state.range(0)));
  const LocalCompletionMap lcm =
      completion_map(g.ars, g.prec, check_locally_decreasing(g.ars, g.prec));
  RewriteSeq top{cell(0, 0), {}}, left{cell(0, 0), {}};
  for (std::size_t k = 1; k <= g.size; ++k) {
    top.tail.push_back({Label{"across"}, cell(0, k)});
    left.tail.push_back({Label{"down"}, cell(k, 0)});
  }
  const Peak p{top, left};
  for (auto _ : state) benchmark::DoNotOptimize(complete_peak(g.ars, g.prec, lcm, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompletePeak)->DenseRange(1, 6)->Complexity();

void BM_CheckLocallyDecreasing(benchmark::State& state) {
  const Grid g = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_locally_decreasing(g.ars, g.prec));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CheckLocallyDecreasing)->DenseRange(2, 12, 2)->Complexity();

}  // namespace

BENCHMARK_MAIN();
