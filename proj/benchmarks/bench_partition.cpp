#include <benchmark/benchmark.h>

#include "citekit/metrics.hpp"
#include "citekit/testkit.hpp"

using namespace citekit;

namespace {

CitationGraph make_graph(std::uint32_t papers, double mean_out) {
  testkit::SynthParams params;
  params.n_papers = papers;
  params.model = testkit::SynthParams::EdgeModel::Preferential;
  params.mean_out_degree = mean_out;
  params.seed = 7;
  auto corpus = testkit::synth_graph(params);
  return build_graph(corpus.edges, corpus.papers);
}

void BM_citation_partition(benchmark::State& state) {
  static CitationGraph g = make_graph(100'000, 10.0);
  PartitionKernel kernel(g);
  PaperId p = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel(p));
    p = (p + 1) % g.paper_count();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_citation_partition);

void BM_metric_table(benchmark::State& state) {
  static CitationGraph g = make_graph(50'000, 8.0);
  std::vector<PaperId> sample(g.paper_count());
  for (PaperId p = 0; p < g.paper_count(); ++p) sample[p] = p;
  MetricTableOptions options;
  options.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_metric_table(g, sample, options));
  }
  state.SetItemsProcessed(state.iterations() * sample.size());
}
BENCHMARK(BM_metric_table)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
