#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace citekit {

/// Scored sample with positive (e.g. Nobel) flags; higher score = more of the
/// metric. Positions double as tie-break ids for top-k style operations.
struct RankedSample {
  std::vector<double> scores;
  std::vector<bool> is_positive;
};

enum class TestMethod { Exact, NormalApprox };

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  TestMethod method = TestMethod::NormalApprox;
};

struct BootstrapCI {
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double level = 0.95;
  int replicates = 0;
};

/// Mean over positives of rank/N, ranking descending by score with mid-ranked
/// ties. Lower = the metric places positives nearer the top. Throws
/// std::invalid_argument without a positive.
double average_ranking(const RankedSample& sample);

struct IpCurve {
  std::array<double, 100> curve{};  // curve[f-1] = IP at top f percent
  double average = 0.0;
};

/// Fraction of positives inside the top-f% cut (size ceil(f/100 * N)) for
/// f = 1..100, ties broken by descending score then ascending position.
IpCurve identification_proportion(const RankedSample& sample);

struct ClassificationAverages {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Sweeps k = 1..N predicting the top k positive; returns the averages of
/// precision, recall and F1 over the sweep (k = 0 is excluded: precision is
/// undefined there and it contributes nothing measurable).
ClassificationAverages classification_curve(const RankedSample& sample);

/// Two-tailed Mann-Whitney U test. Ties get 0.5 credit in U. Exact
/// enumeration when n1+n2 <= 12 with no ties anywhere in the pooled data,
/// otherwise normal approximation with tie-corrected variance and continuity
/// correction. statistic is U of the first sample. Throws on an empty sample.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Kendall's tau-b via O(n log n) merge-sort inversion counting. Throws on
/// length mismatch, n < 2, or an all-tied argument (zero denominator).
double kendall_tau(std::span<const double> x, std::span<const double> y);

/// Percentile bootstrap CI of the mean; mt19937_64 draws with indices reduced
/// modulo n, so results are reproducible for a fixed seed. lo/hi are the
/// (1±level)/2 quantiles of replicate means (linear interpolation), widened
/// to include the sample mean if needed.
BootstrapCI bootstrap_ci(std::span<const double> values, int replicates = 1000,
                         double level = 0.95, std::uint64_t seed = 0);

struct GroupSplit {
  std::vector<std::size_t> high;  // indices with key > threshold
  std::vector<std::size_t> low;   // indices with key <= threshold
  std::size_t undefined_count = 0;
  double threshold = 0.0;
};

/// Splits positions by their key value against the given quantile of the
/// defined keys (linear-interpolation quantile; 0.5 = median). Undefined keys
/// are excluded and counted. Throws with fewer than 2 defined keys or a
/// quantile outside (0,1).
GroupSplit group_split(std::span<const std::optional<double>> keys, double quantile = 0.5);

struct TeamSizeBucket {
  int team_size = 0;       // bucket value; the last bucket pools >= max_bucket
  bool open_ended = false;
  std::size_t count = 0;          // rows with team_size present in this bucket
  std::size_t defined_count = 0;  // of those, rows whose key was defined
  std::optional<BootstrapCI> ci;  // absent when no defined keys
};

/// Per-team-size mean of `keys` with bootstrap CIs: buckets 1..max_bucket-1
/// plus a "max_bucket and larger" catch-all. Rows without team_size are
/// skipped; empty buckets are not emitted. Replicate seeds derive from
/// seed + bucket index so results are schedule-independent.
std::vector<TeamSizeBucket> team_size_profile(
    std::span<const std::optional<double>> keys,
    std::span<const std::optional<std::int32_t>> team_sizes, int max_bucket = 10,
    int replicates = 1000, double level = 0.95, std::uint64_t seed = 0);

}  // namespace citekit
