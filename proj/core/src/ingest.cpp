#include "citekit/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

namespace citekit {
namespace {

// getline + CRLF strip; strips a UTF-8 BOM from the first line.
bool next_line(std::istream& in, std::string& line, bool first) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (first && line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF')
    line.erase(0, 3);
  return true;
}

bool parse_u64(std::string_view field, std::uint64_t& out) {
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

bool parse_i32(std::string_view field, std::int32_t& out) {
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

}  // namespace

std::pair<std::vector<Edge>, IngestStats> parse_edges(std::istream& in,
                                                      EdgeFormat format,
                                                      ParseMode mode) {
  const char sep = format == EdgeFormat::Tsv ? '\t' : ',';
  std::vector<Edge> edges;
  IngestStats stats;
  std::string line;
  bool seen_data = false;
  while (next_line(in, line, stats.lines_read == 0)) {
    ++stats.lines_read;
    if (line.empty()) continue;
    auto fields = split(line, sep);
    Edge e;
    if (fields.size() == 2 && parse_u64(fields[0], e.citing) && parse_u64(fields[1], e.cited)) {
      edges.push_back(e);
      ++stats.edges_kept;
      seen_data = true;
      continue;
    }
    // A single leading header line is tolerated in either mode.
    if (!seen_data && stats.parse_failures == 0 && fields.size() == 2 &&
        iequals(fields[0], "citing") && iequals(fields[1], "cited")) {
      seen_data = true;
      continue;
    }
    if (mode == ParseMode::Strict)
      throw ParseError("malformed edge: '" + line + "'", stats.lines_read);
    ++stats.parse_failures;
  }
  return {std::move(edges), stats};
}

std::pair<std::vector<std::pair<ExternalId, PaperMeta>>, IngestStats> parse_papers(
    std::istream& in, ParseMode mode) {
  std::vector<std::pair<ExternalId, PaperMeta>> rows;
  IngestStats stats;
  std::string line;
  bool seen_data = false;
  while (next_line(in, line, stats.lines_read == 0)) {
    ++stats.lines_read;
    if (line.empty()) continue;
    auto fields = split(line, '\t');

    auto fail = [&](const std::string& why) {
      if (mode == ParseMode::Strict) throw ParseError(why, stats.lines_read);
      ++stats.parse_failures;
    };

    if (fields.size() != 11 && fields.size() != 10) {
      if (!seen_data && stats.parse_failures == 0 && !fields.empty() &&
          iequals(fields[0], "id")) {
        seen_data = true;
        continue;
      }
      fail("expected 10 or 11 tab-separated columns, got " + std::to_string(fields.size()));
      continue;
    }

    ExternalId id;
    if (!parse_u64(fields[0], id)) {
      if (!seen_data && stats.parse_failures == 0 && iequals(fields[0], "id")) {
        seen_data = true;
        continue;
      }
      fail("malformed paper id: '" + std::string(fields[0]) + "'");
      continue;
    }

    PaperMeta meta;
    std::int32_t year;
    if (!parse_i32(fields[1], year) || year < 1800 || year > 2100) {
      fail("bad year: '" + std::string(fields[1]) + "'");
      continue;
    }
    meta.pub_year = year;
    meta.venue_id = std::string(fields[2]);
    meta.volume = std::string(fields[3]);
    meta.issue = std::string(fields[4]);
    meta.field_code = std::string(fields[5]);
    if (!fields[6].empty()) {
      std::int32_t team;
      if (!parse_i32(fields[6], team) || team < 1) {
        fail("bad team_size: '" + std::string(fields[6]) + "'");
        continue;
      }
      meta.team_size = team;
    }
    if (!fields[7].empty()) {
      std::int32_t pages;
      if (!parse_i32(fields[7], pages) || pages < 0) {
        fail("bad page_length: '" + std::string(fields[7]) + "'");
        continue;
      }
      meta.page_length = pages;
    }
    auto label = parse_label(fields[8]);
    if (!label) {
      fail("unknown label: '" + std::string(fields[8]) + "'");
      continue;
    }
    meta.label = *label;
    meta.title = std::string(fields[9]);
    if (fields.size() == 11 && !fields[10].empty()) meta.abstract = std::string(fields[10]);

    rows.emplace_back(id, std::move(meta));
    seen_data = true;
  }
  return {std::move(rows), stats};
}

IdMap::IdMap(std::vector<ExternalId> sorted_unique_ids) : ids_(std::move(sorted_unique_ids)) {}

ExternalId IdMap::external_of(PaperId dense) const {
  if (dense >= ids_.size()) throw std::out_of_range("dense id out of range");
  return ids_[dense];
}

std::optional<PaperId> IdMap::dense_of(ExternalId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<PaperId>(it - ids_.begin());
}

RemapResult remap(std::span<const Edge> edges,
                  std::span<const std::pair<ExternalId, PaperMeta>> metas) {
  std::vector<ExternalId> ids;
  ids.reserve(metas.size() + 2 * edges.size());
  for (const auto& [id, meta] : metas) ids.push_back(id);
  for (const Edge& e : edges) {
    ids.push_back(e.citing);
    ids.push_back(e.cited);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  RemapResult result;
  result.map = IdMap(std::move(ids));
  result.edges.reserve(edges.size());
  for (const Edge& e : edges)
    result.edges.emplace_back(*result.map.dense_of(e.citing), *result.map.dense_of(e.cited));

  result.metas.reserve(metas.size());
  for (const auto& [id, meta] : metas)
    result.metas.emplace_back(*result.map.dense_of(id), meta);
  std::sort(result.metas.begin(), result.metas.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < result.metas.size(); ++i) {
    if (result.metas[i].first == result.metas[i - 1].first)
      throw std::invalid_argument(
          "duplicate paper id in metadata: " +
          std::to_string(result.map.external_of(result.metas[i].first)));
  }
  return result;
}

}  // namespace citekit
