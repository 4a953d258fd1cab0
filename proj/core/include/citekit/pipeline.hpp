#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "citekit/ingest.hpp"
#include "citekit/matching.hpp"
#include "citekit/metrics.hpp"
#include "citekit/testkit.hpp"

namespace citekit {

// Stable exit-code contract shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMissingInput = 2;
inline constexpr int kExitEmptySelection = 3;
inline constexpr int kExitSchemaError = 4;

/// Everything a pipeline stage needs. Paths left empty fall back to
/// defaults under output_dir. Reports embed the semantic part of this config
/// (hash + seed + denominator); threads and paths stay out of the hash so
/// reruns are byte-identical regardless of machine layout or worker count.
struct RunConfig {
  std::filesystem::path edges_path;
  std::filesystem::path papers_path;
  std::filesystem::path lexicon_dir;
  std::filesystem::path output_dir = ".";
  std::filesystem::path bundle_path;    // default output_dir/graph.ckgb
  std::filesystem::path table_path;     // default output_dir/metrics.tsv
  std::filesystem::path controls_path;  // optional target/control pairs overlay

  EdgeFormat edge_format = EdgeFormat::Tsv;
  bool strict_edges = false;
  DenominatorMode denominator = DenominatorMode::Partition;
  PercentileScope percentile_scope = PercentileScope::WithinField;
  double quantile = 0.5;
  int bootstrap_replicates = 1000;
  std::uint64_t seed = 42;
  int threads = 0;  // 0 = hardware concurrency
  std::string field_filter;
  bool all_papers = false;  // sample = whole corpus instead of nobel+control
  int top_k = 5;
  std::string split_by = "dc";  // metric key for the linguistic split
  bool freq_tsv = false;        // also dump per-group token frequencies

  std::uint32_t verify_graphs = 50;
  std::uint32_t verify_max_papers = 120;

  MatchCriteria match;
  testkit::SynthParams synth;

  std::filesystem::path resolved_bundle() const;
  std::filesystem::path resolved_table() const;
  int resolved_threads() const;
};

/// FNV-1a hash (hex) of the semantic configuration fields.
std::string config_hash(const RunConfig& config);

/// Body of the `# ...` provenance line embedded in TSV reports.
std::string report_provenance(const RunConfig& config);

// Subcommands. Each returns an exit code from the contract above and reports
// problems on stderr.
int run_ingest(const RunConfig& config);
int run_metrics(const RunConfig& config);
int run_match(const RunConfig& config);
int run_eval(const RunConfig& config);
int run_ling(const RunConfig& config);
int run_verify(const RunConfig& config);
int run_synth(const RunConfig& config);

}  // namespace citekit
