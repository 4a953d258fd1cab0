#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citekit/common.hpp"

namespace citekit {

enum class Label : std::uint8_t { Other = 0, Control = 1, Nobel = 2 };

const char* to_string(Label label);
std::optional<Label> parse_label(std::string_view text);  // case-insensitive

/// Per-paper metadata. Papers that appear only as edge endpoints carry a
/// default-constructed meta (label Other, everything else absent).
struct PaperMeta {
  std::optional<std::int32_t> pub_year;
  std::string venue_id;    // empty = unknown
  std::string volume;      // empty = unknown
  std::string issue;       // empty = unknown
  std::string field_code;  // OECD second-level code; empty = unknown
  std::optional<std::int32_t> team_size;
  std::optional<std::int32_t> page_length;
  std::string title;
  std::optional<std::string> abstract;
  Label label = Label::Other;

  friend bool operator==(const PaperMeta&, const PaperMeta&) = default;
};

/// Immutable citation graph. Both directions are stored as CSR adjacency with
/// strictly ascending, duplicate-free lists; (u cites v) appears in
/// references(u) iff u appears in citers(v). Safe for concurrent reads.
class CitationGraph {
 public:
  CitationGraph() = default;

  PaperId paper_count() const { return static_cast<PaperId>(external_ids_.size()); }
  std::uint64_t edge_count() const { return ref_targets_.size(); }

  /// Papers cited by p (sorted ascending). Throws std::out_of_range.
  std::span<const PaperId> references(PaperId p) const;
  /// Papers citing p (sorted ascending). Throws std::out_of_range.
  std::span<const PaperId> citers(PaperId p) const;

  const PaperMeta& meta(PaperId p) const;
  /// Applies a label assignment (e.g. marking matched controls). Structure
  /// stays immutable; call before handing the graph to concurrent readers.
  void set_label(PaperId p, Label label);
  ExternalId external_id(PaperId p) const;
  /// Inverse of external_id; nullopt when the id is not in the graph.
  std::optional<PaperId> dense_id(ExternalId id) const;

  /// Dense ids are assigned in ascending external-id order, so this list is
  /// sorted; it defines the external<->dense bijection.
  std::span<const ExternalId> external_ids() const { return external_ids_; }

  std::uint64_t self_loops_dropped() const { return self_loops_dropped_; }
  std::uint64_t duplicate_edges_dropped() const { return duplicates_dropped_; }

  // Building blocks used by build_graph and the bundle reader.
  struct Parts {
    std::vector<ExternalId> external_ids;        // sorted ascending, unique
    std::vector<std::uint64_t> ref_offsets;      // size N+1
    std::vector<PaperId> ref_targets;            // sorted within each list
    std::vector<PaperMeta> metas;                // size N
    std::uint64_t self_loops_dropped = 0;
    std::uint64_t duplicates_dropped = 0;
  };
  /// Assembles a graph from reference-side CSR; the citer side is derived by
  /// transposition. Validates basic shape, not full invariants.
  static CitationGraph from_parts(Parts parts);

 private:
  std::vector<ExternalId> external_ids_;
  std::vector<std::uint64_t> ref_offsets_;
  std::vector<PaperId> ref_targets_;
  std::vector<std::uint64_t> citer_offsets_;
  std::vector<PaperId> citer_targets_;
  std::vector<PaperMeta> metas_;
  std::uint64_t self_loops_dropped_ = 0;
  std::uint64_t duplicates_dropped_ = 0;

  void check_range(PaperId p) const;
};

/// Builds the graph from externally-keyed edges and metadata. Duplicate edges
/// collapse to one; self-loops are dropped and counted; endpoints without a
/// meta row get the default meta. The input order of edges and metas does not
/// affect the result. Throws std::invalid_argument on duplicate meta ids.
CitationGraph build_graph(std::span<const Edge> edges,
                          std::span<const std::pair<ExternalId, PaperMeta>> metas);

}  // namespace citekit
