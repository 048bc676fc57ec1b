#include <benchmark/benchmark.h>

#include "spacedcl/baselines.hpp"
#include "spacedcl/graph_indices.hpp"
#include "spacedcl/index_pipeline.hpp"
#include "spacedcl/kernels.hpp"
#include "spacedcl/learner.hpp"
#include "spacedcl/scheduler.hpp"
#include "spacedcl/synth.hpp"
#include "spacedcl/text_indices.hpp"

using namespace spacedcl;

namespace {

const Dataset& bench_data() {
  static const Dataset d = [] {
    SynthParams p;
    return make_synthetic(p);
  }();
  return d;
}

const IndexMatrix& bench_matrix() {
  static const IndexMatrix m = build_index_matrix(bench_data(), IndexSpec::defaults_for(bench_data()));
  return m;
}

void BM_IndexMatrix(benchmark::State& state) {
  IndexSpec spec = IndexSpec::defaults_for(bench_data());
  spec.hops = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_index_matrix(bench_data(), spec));
}
BENCHMARK(BM_IndexMatrix)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_GraphIndex(benchmark::State& state) {
  const auto kind = static_cast<GraphIndexKind>(state.range(0));
  const std::vector<NodeId> targets = is_pairwise(kind) ? std::vector<NodeId>{0, 1} : std::vector<NodeId>{0};
  const Subgraph sg = extract_ego_subgraph(bench_data().graph, targets, 2, 256);
  for (auto _ : state) benchmark::DoNotOptimize(compute_index(kind, sg));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_GraphIndex)->DenseRange(0, static_cast<int>(all_graph_index_kinds.size()) - 1);

void BM_TextIndices(benchmark::State& state) {
  const auto& texts = bench_data().texts;
  for (auto _ : state) {
    for (const auto& t : texts) benchmark::DoNotOptimize(analyze_text(t));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * texts.size()));
}
BENCHMARK(BM_TextIndices);

void BM_SelectIndices(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(select_indices(bench_matrix(), 10, 7));
}
BENCHMARK(BM_SelectIndices)->Unit(benchmark::kMillisecond);

void BM_FitTau(benchmark::State& state) {
  std::vector<TauSample> samples;
  for (int i = 0; i < 64; ++i) samples.push_back({0.01 * i, kernel_eval(KernelKind::sec, 0.01 * i, 3.0)});
  for (auto _ : state) benchmark::DoNotOptimize(fit_tau(KernelKind::sec, samples, 0.5, 1.0));
}
BENCHMARK(BM_FitTau);

void BM_Training(benchmark::State& state) {
  const auto sel = select_indices(bench_matrix(), 10, 7);
  const auto pairs = build_rankings(bench_matrix(), sel.selected,
                                    std::vector<SortOrder>(all_sort_orders.begin(), all_sort_orders.end()));
  const auto splits = bench_data().splits();
  SchedulerConfig cfg;
  cfg.competence = {0.1, 1.0, 60};
  for (auto _ : state) {
    NeighborLogisticLearner l(bench_data());
    if (state.range(0) == 0) {
      benchmark::DoNotOptimize(run_training(cfg, pairs, l, splits));
    } else {
      benchmark::DoNotOptimize(run_nocl(l, splits, 60));
    }
  }
  state.SetLabel(state.range(0) == 0 ? "tgcl" : "nocl");
}
BENCHMARK(BM_Training)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
