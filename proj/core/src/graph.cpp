#include "citekit/graph.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace citekit {

const char* to_string(Label label) {
  switch (label) {
    case Label::Nobel: return "nobel";
    case Label::Control: return "control";
    case Label::Other: return "other";
  }
  return "other";
}

std::optional<Label> parse_label(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "nobel") return Label::Nobel;
  if (lower == "control") return Label::Control;
  if (lower == "other" || lower.empty()) return Label::Other;
  return std::nullopt;
}

void CitationGraph::check_range(PaperId p) const {
  if (p >= paper_count())
    throw std::out_of_range("paper id " + std::to_string(p) + " out of range (N=" +
                            std::to_string(paper_count()) + ")");
}

std::span<const PaperId> CitationGraph::references(PaperId p) const {
  check_range(p);
  return {ref_targets_.data() + ref_offsets_[p],
          ref_targets_.data() + ref_offsets_[p + 1]};
}

std::span<const PaperId> CitationGraph::citers(PaperId p) const {
  check_range(p);
  return {citer_targets_.data() + citer_offsets_[p],
          citer_targets_.data() + citer_offsets_[p + 1]};
}

const PaperMeta& CitationGraph::meta(PaperId p) const {
  check_range(p);
  return metas_[p];
}

void CitationGraph::set_label(PaperId p, Label label) {
  check_range(p);
  metas_[p].label = label;
}

ExternalId CitationGraph::external_id(PaperId p) const {
  check_range(p);
  return external_ids_[p];
}

std::optional<PaperId> CitationGraph::dense_id(ExternalId id) const {
  auto it = std::lower_bound(external_ids_.begin(), external_ids_.end(), id);
  if (it == external_ids_.end() || *it != id) return std::nullopt;
  return static_cast<PaperId>(it - external_ids_.begin());
}

CitationGraph CitationGraph::from_parts(Parts parts) {
  const std::size_t n = parts.external_ids.size();
  if (parts.ref_offsets.size() != n + 1)
    throw std::invalid_argument("graph parts: offset table size mismatch");
  if (parts.metas.size() != n)
    throw std::invalid_argument("graph parts: meta table size mismatch");
  if (!parts.ref_offsets.empty() && parts.ref_offsets.back() != parts.ref_targets.size())
    throw std::invalid_argument("graph parts: target table size mismatch");

  CitationGraph g;
  g.external_ids_ = std::move(parts.external_ids);
  g.ref_offsets_ = std::move(parts.ref_offsets);
  g.ref_targets_ = std::move(parts.ref_targets);
  g.metas_ = std::move(parts.metas);
  g.self_loops_dropped_ = parts.self_loops_dropped;
  g.duplicates_dropped_ = parts.duplicates_dropped;
  if (n == 0) {
    g.ref_offsets_.assign(1, 0);
    g.citer_offsets_.assign(1, 0);
    return g;
  }

  // Transpose: counting sort of edges by cited endpoint. Scanning sources in
  // ascending order keeps each citer list sorted.
  g.citer_offsets_.assign(n + 1, 0);
  for (PaperId v : g.ref_targets_) ++g.citer_offsets_[v + 1];
  for (std::size_t i = 1; i <= n; ++i) g.citer_offsets_[i] += g.citer_offsets_[i - 1];
  g.citer_targets_.resize(g.ref_targets_.size());
  std::vector<std::uint64_t> cursor(g.citer_offsets_.begin(), g.citer_offsets_.end() - 1);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::uint64_t e = g.ref_offsets_[u]; e < g.ref_offsets_[u + 1]; ++e) {
      g.citer_targets_[cursor[g.ref_targets_[e]]++] = static_cast<PaperId>(u);
    }
  }
  return g;
}

CitationGraph build_graph(std::span<const Edge> edges,
                          std::span<const std::pair<ExternalId, PaperMeta>> metas) {
  // Universe = meta ids plus edge endpoints; dense ids follow ascending
  // external-id order so differently-ordered dumps build identical graphs.
  std::vector<ExternalId> ids;
  ids.reserve(metas.size() + 2 * edges.size());
  for (const auto& [id, meta] : metas) ids.push_back(id);
  for (const Edge& e : edges) {
    ids.push_back(e.citing);
    ids.push_back(e.cited);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  const std::size_t n = ids.size();
  auto dense_of = [&ids](ExternalId id) {
    return static_cast<PaperId>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::vector<PaperMeta> dense_metas(n);
  std::vector<bool> seen(n, false);
  for (const auto& [id, meta] : metas) {
    PaperId d = dense_of(id);
    if (seen[d])
      throw std::invalid_argument("duplicate paper id in metadata: " + std::to_string(id));
    seen[d] = true;
    dense_metas[d] = meta;
  }

  std::uint64_t self_loops = 0;
  std::vector<std::pair<PaperId, PaperId>> dense_edges;
  dense_edges.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.citing == e.cited) {
      ++self_loops;
      continue;
    }
    dense_edges.emplace_back(dense_of(e.citing), dense_of(e.cited));
  }
  std::sort(dense_edges.begin(), dense_edges.end());
  auto last = std::unique(dense_edges.begin(), dense_edges.end());
  std::uint64_t duplicates = static_cast<std::uint64_t>(dense_edges.end() - last);
  dense_edges.erase(last, dense_edges.end());

  CitationGraph::Parts parts;
  parts.external_ids = std::move(ids);
  parts.metas = std::move(dense_metas);
  parts.self_loops_dropped = self_loops;
  parts.duplicates_dropped = duplicates;
  parts.ref_offsets.assign(n + 1, 0);
  for (const auto& [u, v] : dense_edges) ++parts.ref_offsets[u + 1];
  for (std::size_t i = 1; i <= n; ++i) parts.ref_offsets[i] += parts.ref_offsets[i - 1];
  parts.ref_targets.reserve(dense_edges.size());
  for (const auto& [u, v] : dense_edges) parts.ref_targets.push_back(v);

  return CitationGraph::from_parts(std::move(parts));
}

}  // namespace citekit
