#include <benchmark/benchmark.h>

#include <sstream>

#include "citekit/ingest.hpp"

using namespace citekit;

namespace {

std::string edge_payload(std::size_t lines) {
  std::string data;
  data.reserve(lines * 16);
  for (std::size_t i = 0; i < lines; ++i) {
    data += std::to_string(i % 100000);
    data += '\t';
    data += std::to_string((i * 31) % 100000);
    data += '\n';
  }
  return data;
}

void BM_parse_edges(benchmark::State& state) {
  static const std::string payload = edge_payload(200'000);
  for (auto _ : state) {
    std::istringstream in(payload);
    benchmark::DoNotOptimize(parse_edges(in));
  }
  state.SetBytesProcessed(state.iterations() * payload.size());
}
BENCHMARK(BM_parse_edges);

}  // namespace

BENCHMARK_MAIN();
