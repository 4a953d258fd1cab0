#include "citekit/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "citekit/common.hpp"
#include "citekit/lingstats.hpp"

namespace citekit {

const char* to_string(DenominatorMode mode) {
  return mode == DenominatorMode::Partition ? "partition" : "literal";
}

std::optional<DenominatorMode> parse_denominator_mode(std::string_view text) {
  if (text == "partition") return DenominatorMode::Partition;
  if (text == "literal") return DenominatorMode::Literal;
  return std::nullopt;
}

PartitionKernel::PartitionKernel(const CitationGraph& g)
    : graph_(&g), citer_stamp_(g.paper_count(), 0), rc_stamp_(g.paper_count(), 0) {}

CitationPartition PartitionKernel::operator()(PaperId focal) {
  const CitationGraph& g = *graph_;
  if (epoch_ == std::numeric_limits<std::uint32_t>::max()) {
    std::fill(citer_stamp_.begin(), citer_stamp_.end(), 0);
    std::fill(rc_stamp_.begin(), rc_stamp_.end(), 0);
    epoch_ = 0;
  }
  ++epoch_;

  CitationPartition part;
  auto citers = g.citers(focal);
  part.c = static_cast<std::uint32_t>(citers.size());
  for (PaperId u : citers) citer_stamp_[u] = epoch_;

  for (PaperId r : g.references(focal)) {
    for (PaperId u : g.citers(r)) {
      if (u == focal) continue;  // the focal paper is not its own citer
      if (rc_stamp_[u] == epoch_) continue;
      rc_stamp_[u] = epoch_;
      ++part.rc_total;
      if (citer_stamp_[u] == epoch_) ++part.cc;
    }
  }
  part.dc = part.c - part.cc;
  part.n_r = part.rc_total - part.cc;
  return part;
}

CitationPartition citation_partition(const CitationGraph& g, PaperId focal) {
  PartitionKernel kernel(g);
  return kernel(focal);
}

namespace {

std::uint64_t denominator(const CitationPartition& p, DenominatorMode mode) {
  std::uint64_t tail = mode == DenominatorMode::Partition ? p.n_r : p.rc_total;
  return static_cast<std::uint64_t>(p.dc) + p.cc + tail;
}

}  // namespace

std::optional<double> cd_index(const CitationPartition& p, DenominatorMode mode) {
  std::uint64_t d = denominator(p, mode);
  if (d == 0) return std::nullopt;
  return (static_cast<double>(p.dc) - static_cast<double>(p.cc)) / static_cast<double>(d);
}

std::optional<double> di_star(const CitationPartition& p, DenominatorMode mode) {
  std::uint64_t d = denominator(p, mode);
  if (d == 0) return std::nullopt;
  return static_cast<double>(p.dc) / static_cast<double>(d);
}

std::optional<double> simple_di(const CitationPartition& p) {
  if (p.c == 0) return std::nullopt;
  return static_cast<double>(p.dc) / static_cast<double>(p.c);
}

PercentileResult percentile_ranks(std::span<const std::optional<double>> values) {
  PercentileResult result;
  result.percentiles.assign(values.size(), 0.0);
  result.defined.assign(values.size(), false);

  std::vector<std::pair<double, std::size_t>> present;
  present.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) present.emplace_back(*values[i], i);
  }
  if (present.empty()) throw std::invalid_argument("percentile_ranks: all inputs absent");

  std::sort(present.begin(), present.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const double n = static_cast<double>(present.size());
  std::size_t i = 0;
  while (i < present.size()) {
    std::size_t j = i;
    while (j < present.size() && present[j].first == present[i].first) ++j;
    double pct = (static_cast<double>(i) + 0.5 * static_cast<double>(j - i)) / n;
    for (std::size_t k = i; k < j; ++k) {
      result.percentiles[present[k].second] = pct;
      result.defined[present[k].second] = true;
    }
    i = j;
  }
  return result;
}

std::vector<MetricRow> compute_metric_table(const CitationGraph& g,
                                            std::span<const PaperId> sample,
                                            const MetricTableOptions& options) {
  if (sample.empty()) throw std::invalid_argument("compute_metric_table: empty sample");
  {
    std::unordered_set<PaperId> seen;
    seen.reserve(sample.size());
    for (PaperId p : sample) {
      if (p >= g.paper_count())
        throw std::out_of_range("sample paper id out of range: " + std::to_string(p));
      if (!seen.insert(p).second)
        throw std::invalid_argument("duplicate paper in sample: external id " +
                                    std::to_string(g.external_id(p)));
    }
  }

  std::vector<MetricRow> rows(sample.size());
  parallel_blocks(sample.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    PartitionKernel kernel(g);
    for (std::size_t i = begin; i < end; ++i) {
      MetricRow& row = rows[i];
      row.paper = sample[i];
      row.partition = kernel(sample[i]);
      row.reference_count = static_cast<std::uint32_t>(g.references(sample[i]).size());
      row.cd_index = cd_index(row.partition, options.denominator);
      row.di_star = di_star(row.partition, options.denominator);
      row.simple_di = simple_di(row.partition);
    }
  });

  // Percentiles within the configured scope. Field groups key on field_code;
  // papers without one form their own group under the empty key.
  std::map<std::string, std::vector<std::size_t>> groups;
  if (options.scope == PercentileScope::Pooled) {
    auto& all = groups[std::string()];
    all.resize(rows.size());
    std::iota(all.begin(), all.end(), 0);
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i)
      groups[g.meta(rows[i].paper).field_code].push_back(i);
  }

  for (const auto& [field, members] : groups) {
    std::vector<std::optional<double>> citations(members.size());
    std::vector<std::optional<double>> cds(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
      citations[k] = static_cast<double>(rows[members[k]].partition.c);
      cds[k] = rows[members[k]].cd_index;
    }
    PercentileResult cp = percentile_ranks(citations);
    for (std::size_t k = 0; k < members.size(); ++k)
      rows[members[k]].cp = cp.percentiles[k];

    bool any_cd = std::any_of(cds.begin(), cds.end(), [](const auto& v) { return v.has_value(); });
    if (any_cd) {
      PercentileResult cdp = percentile_ranks(cds);
      for (std::size_t k = 0; k < members.size(); ++k) {
        if (!cdp.defined[k]) continue;
        MetricRow& row = rows[members[k]];
        row.cdp = cdp.percentiles[k];
        row.c_cd_p = row.cp + *row.cdp;
      }
    }
  }
  return rows;
}

namespace {

std::string opt_str(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

void write_metric_table(std::ostream& out, const CitationGraph& g,
                        std::span<const MetricRow> rows, const std::string& provenance) {
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << kMetricTableHeader << "\n";
  for (const MetricRow& row : rows) {
    const PaperMeta& meta = g.meta(row.paper);
    out << g.external_id(row.paper) << '\t' << row.partition.c << '\t'
        << row.reference_count << '\t' << row.partition.dc << '\t' << row.partition.cc
        << '\t' << row.partition.n_r << '\t' << opt_str(row.cd_index) << '\t'
        << opt_str(row.di_star) << '\t' << opt_str(row.simple_di) << '\t'
        << format_double(row.cp) << '\t' << opt_str(row.cdp) << '\t'
        << opt_str(row.c_cd_p) << '\t' << to_string(meta.label) << '\t'
        << meta.field_code << '\t'
        << (meta.pub_year ? std::to_string(*meta.pub_year) : std::string()) << '\t'
        << (meta.team_size ? std::to_string(*meta.team_size) : std::string()) << '\t'
        << title_length(meta.title) << "\n";
  }
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

template <typename T>
T require_num(const std::string& field, std::size_t line_no, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(std::string("bad ") + what + ": '" + field + "'", line_no);
  return value;
}

std::optional<double> opt_num(const std::string& field, std::size_t line_no, const char* what) {
  if (field.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(std::string("bad ") + what + ": '" + field + "'", line_no);
  return value;
}

}  // namespace

std::vector<MetricFileRow> read_metric_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  // Skip provenance comments ahead of the header.
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    break;
  }
  auto header = split_tabs(line);
  auto expected = split_tabs(kMetricTableHeader);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i) index[header[i]] = i;
  std::vector<std::size_t> cols;
  for (const auto& name : expected) {
    auto it = index.find(name);
    if (it == index.end())
      throw std::runtime_error("metric table missing required column: " + name);
    cols.push_back(it->second);
  }

  std::vector<MetricFileRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() < header.size())
      throw ParseError("short row (" + std::to_string(fields.size()) + " columns)", line_no);
    auto f = [&](std::size_t i) -> const std::string& { return fields[cols[i]]; };

    MetricFileRow row;
    row.id = require_num<ExternalId>(f(0), line_no, "id");
    row.c = require_num<std::uint32_t>(f(1), line_no, "c");
    row.reference_count = require_num<std::uint32_t>(f(2), line_no, "reference_count");
    row.dc = require_num<std::uint32_t>(f(3), line_no, "dc");
    row.cc = require_num<std::uint32_t>(f(4), line_no, "cc");
    row.n_r = require_num<std::uint32_t>(f(5), line_no, "n_r");
    row.cd_index = opt_num(f(6), line_no, "cd_index");
    row.di_star = opt_num(f(7), line_no, "di_star");
    row.simple_di = opt_num(f(8), line_no, "simple_di");
    row.cp = require_num<double>(f(9), line_no, "cp");
    row.cdp = opt_num(f(10), line_no, "cdp");
    row.c_cd_p = opt_num(f(11), line_no, "c_cd_p");
    auto label = parse_label(f(12));
    if (!label) throw ParseError("unknown label: '" + f(12) + "'", line_no);
    row.label = *label;
    row.field_code = f(13);
    if (!f(14).empty()) row.pub_year = require_num<std::int32_t>(f(14), line_no, "pub_year");
    if (!f(15).empty()) row.team_size = require_num<std::int32_t>(f(15), line_no, "team_size");
    row.title_length = require_num<std::uint32_t>(f(16), line_no, "title_length");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace citekit
