#pragma once

#include <span>
#include <utility>
#include <vector>

#include "citekit/evalstats.hpp"
#include "citekit/graph.hpp"
#include "citekit/metrics.hpp"

namespace citekit::testkit {

/// Deterministic synthetic corpus generator. The seed fixes the entire
/// output; draws use raw mt19937_64 words (no std distributions) so results
/// are identical across platforms.
struct SynthParams {
  std::uint32_t n_papers = 0;
  enum class EdgeModel { Density, Preferential } model = EdgeModel::Density;
  /// Density model: each (newer, older) pair carries an edge independently
  /// with this probability. Quadratic scan; keep n_papers small.
  double edge_density = 0.01;
  /// Preferential model: mean references drawn per paper from older papers.
  double mean_out_degree = 10.0;
  /// Probability of attaching proportionally to in-degree (0 = uniform).
  double attachment_strength = 0.0;
  std::uint64_t seed = 0;
  double nobel_fraction = 0.0;
  std::int32_t year_min = 1900;
  std::int32_t year_max = 2000;
  std::uint32_t venue_count = 10;
  std::uint32_t max_team_size = 8;
};

struct SynthCorpus {
  std::vector<Edge> edges;
  std::vector<std::pair<ExternalId, PaperMeta>> papers;
};

/// Generates a citation DAG: papers are ordered by publication year and only
/// cite strictly older papers. Throws std::invalid_argument on bad params.
SynthCorpus synth_graph(const SynthParams& params);

/// The 9-edge hand-checked fixture used across the test suites:
///   c1->fp c2->fp c3->fp fp->r1 fp->r2 c1->r1 x1->r1 x1->r2 x2->r2
/// with external ids fp=1 r1=2 r2=3 c1=4 c2=5 c3=6 x1=7 x2=8.
std::vector<Edge> g1_edges();
std::vector<std::pair<ExternalId, PaperMeta>> g1_papers();
inline constexpr ExternalId kG1FocalPaper = 1;

/// Literal set-construction partition straight from the raw edge list
/// (duplicates collapse, self-loops ignored). O(E) per call, no indexing.
CitationPartition oracle_partition(std::span<const Edge> edges, ExternalId focal);

/// Exact Mann-Whitney by explicit enumeration of every way to label the
/// pooled values. Throws when n1+n2 > 20.
TestResult oracle_mwu(std::span<const double> a, std::span<const double> b);

/// Kendall tau-b by all-pairs enumeration. Throws when n > 500 or the
/// denominator vanishes.
double oracle_tau(std::span<const double> x, std::span<const double> y);

struct OracleTopK {
  IpCurve ip;
  ClassificationAverages classification;
  double average_ranking = 0.0;
};

/// Reference top-k evaluation: recomputes each cut from scratch with its own
/// sort, and average ranking by pairwise comparison counting.
OracleTopK oracle_topk(const RankedSample& sample);

}  // namespace citekit::testkit
