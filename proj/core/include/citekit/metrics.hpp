#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citekit/graph.hpp"

namespace citekit {

/// The classic CD index uses the disjoint three-way partition in the
/// denominator (dc + cc + |RC \ C|). `Literal` reads the source formula
/// (DC-CC)/(DC+CC+RC) with RC as the full set of reference citers, which
/// counts CC twice.
enum class DenominatorMode { Partition, Literal };

const char* to_string(DenominatorMode mode);
std::optional<DenominatorMode> parse_denominator_mode(std::string_view text);

/// Set sizes around one focal paper: C = citers, RC = papers citing at least
/// one reference (focal paper excluded), CC = RC ∩ C, DC = C \ CC,
/// n_r = |RC \ C|. Always dc + cc = c and cc + n_r = rc_total.
struct CitationPartition {
  std::uint32_t c = 0;
  std::uint32_t cc = 0;
  std::uint32_t dc = 0;
  std::uint32_t n_r = 0;
  std::uint32_t rc_total = 0;

  friend bool operator==(const CitationPartition&, const CitationPartition&) = default;
};

/// Reusable scratch for batch partition computation. One instance per thread;
/// not thread-safe itself.
class PartitionKernel {
 public:
  explicit PartitionKernel(const CitationGraph& g);
  CitationPartition operator()(PaperId focal);

 private:
  const CitationGraph* graph_;
  std::vector<std::uint32_t> citer_stamp_;
  std::vector<std::uint32_t> rc_stamp_;
  std::uint32_t epoch_ = 0;
};

/// One-off partition of a single focal paper. Throws std::out_of_range.
CitationPartition citation_partition(const CitationGraph& g, PaperId focal);

/// (dc - cc) / denominator, in [-1, 1]; nullopt when the denominator is 0.
std::optional<double> cd_index(const CitationPartition& p,
                               DenominatorMode mode = DenominatorMode::Partition);
/// dc / denominator, in [0, 1]; nullopt when the denominator is 0.
std::optional<double> di_star(const CitationPartition& p,
                              DenominatorMode mode = DenominatorMode::Partition);
/// dc / c, in [0, 1]; nullopt when c = 0.
std::optional<double> simple_di(const CitationPartition& p);

struct PercentileResult {
  std::vector<double> percentiles;  // mid-rank, in [0,1]; 0 for absent inputs
  std::vector<bool> defined;        // false where the input was absent
};

/// Mid-rank percentile of each present value among all present values:
/// (strictly below + 0.5 * tied) / present. Throws std::invalid_argument when
/// every input is absent.
PercentileResult percentile_ranks(std::span<const std::optional<double>> values);

enum class PercentileScope { Pooled, WithinField };

/// Full metric bundle for one sample paper. Percentile fields are relative to
/// the sample (and percentile scope) the row was computed under.
struct MetricRow {
  PaperId paper = 0;
  CitationPartition partition;
  std::uint32_t reference_count = 0;
  std::optional<double> cd_index;
  std::optional<double> di_star;
  std::optional<double> simple_di;
  double cp = 0.0;                  // citation percentile; counts are never absent
  std::optional<double> cdp;        // absent iff cd_index is absent
  std::optional<double> c_cd_p;     // cp + cdp when cdp is defined
};

struct MetricTableOptions {
  DenominatorMode denominator = DenominatorMode::Partition;
  PercentileScope scope = PercentileScope::WithinField;
  int threads = 1;
};

/// One MetricRow per sample paper, in input order, deterministic for any
/// thread count. Throws std::invalid_argument on an empty sample or duplicate
/// ids, std::out_of_range on a bad id.
std::vector<MetricRow> compute_metric_table(const CitationGraph& g,
                                            std::span<const PaperId> sample,
                                            const MetricTableOptions& options = {});

/// Row of the exported metric table file (the on-disk schema).
struct MetricFileRow {
  ExternalId id = 0;
  std::uint32_t c = 0;
  std::uint32_t reference_count = 0;
  std::uint32_t dc = 0;
  std::uint32_t cc = 0;
  std::uint32_t n_r = 0;
  std::optional<double> cd_index;
  std::optional<double> di_star;
  std::optional<double> simple_di;
  double cp = 0.0;
  std::optional<double> cdp;
  std::optional<double> c_cd_p;
  Label label = Label::Other;
  std::string field_code;
  std::optional<std::int32_t> pub_year;
  std::optional<std::int32_t> team_size;
  std::uint32_t title_length = 0;
};

inline constexpr const char* kMetricTableHeader =
    "id\tc\treference_count\tdc\tcc\tn_r\tcd_index\tdi_star\tsimple_di\tcp\tcdp\tc_cd_p\t"
    "label\tfield_code\tpub_year\tteam_size\ttitle_length";

/// Writes the metric table (TSV, absent values as empty fields). When
/// `provenance` is non-empty it is emitted first as a single `# ...` line.
void write_metric_table(std::ostream& out, const CitationGraph& g,
                        std::span<const MetricRow> rows,
                        const std::string& provenance = {});

/// Reads a metric table written by write_metric_table. Throws
/// std::runtime_error when required columns are missing, ParseError on bad
/// rows.
std::vector<MetricFileRow> read_metric_table(std::istream& in);

}  // namespace citekit
