#pragma once

#include <istream>
#include <utility>
#include <vector>

#include "citekit/graph.hpp"

namespace citekit {

enum class EdgeFormat { Tsv, Csv };
enum class ParseMode { Strict, Lenient };

/// Line accounting for one ingest run. lines_read covers every physical line;
/// header and blank lines make up the slack in
///   lines_read >= edges_kept + duplicates_dropped + self_loops_dropped + parse_failures.
struct IngestStats {
  std::uint64_t lines_read = 0;
  std::uint64_t edges_kept = 0;
  std::uint64_t duplicates_dropped = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t parse_failures = 0;
};

/// Streaming edge-list parser: one `<citing><sep><cited>` pair per line, an
/// optional single `citing<sep>cited` header, blank lines skipped, LF or CRLF.
/// Lenient mode counts malformed lines and moves on; strict mode throws
/// ParseError on the first one. Duplicates and self-loops pass through here
/// and are settled by build_graph.
std::pair<std::vector<Edge>, IngestStats> parse_edges(
    std::istream& in, EdgeFormat format = EdgeFormat::Tsv,
    ParseMode mode = ParseMode::Lenient);

/// Streaming paper-metadata parser. TSV columns, in order:
///   id, year, venue_id, volume, issue, field_code, team_size, page_length,
///   label, title, abstract
/// The trailing abstract column may be omitted; empty string = absent for the
/// optional fields. Labels fold case. Strict mode (the default for curated
/// metadata) throws ParseError; lenient counts and skips.
std::pair<std::vector<std::pair<ExternalId, PaperMeta>>, IngestStats> parse_papers(
    std::istream& in, ParseMode mode = ParseMode::Strict);

/// External<->dense bijection over a sorted unique id universe.
class IdMap {
 public:
  IdMap() = default;
  explicit IdMap(std::vector<ExternalId> sorted_unique_ids);

  std::size_t size() const { return ids_.size(); }
  ExternalId external_of(PaperId dense) const;
  std::optional<PaperId> dense_of(ExternalId id) const;
  const std::vector<ExternalId>& ids() const { return ids_; }

 private:
  std::vector<ExternalId> ids_;
};

struct RemapResult {
  std::vector<std::pair<PaperId, PaperId>> edges;          // (citing, cited)
  std::vector<std::pair<PaperId, PaperMeta>> metas;        // sorted by dense id
  IdMap map;
};

/// Assigns dense ids in ascending external-id order over the union of meta
/// ids and edge endpoints. Throws std::invalid_argument naming the id when a
/// meta id repeats.
RemapResult remap(std::span<const Edge> edges,
                  std::span<const std::pair<ExternalId, PaperMeta>> metas);

}  // namespace citekit
