#include "citekit/matching.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace citekit {
namespace {

// Missing flagged field -> nullopt. Field values are joined with \x1f so keys
// cannot collide across fields.
std::optional<std::string> match_key(const PaperMeta& meta, const MatchCriteria& c) {
  std::string key;
  auto append = [&key](const std::string& part) {
    key += part;
    key += '\x1f';
  };
  if (c.require_same_venue) {
    if (meta.venue_id.empty()) return std::nullopt;
    append(meta.venue_id);
  }
  if (c.require_same_year) {
    if (!meta.pub_year) return std::nullopt;
    append(std::to_string(*meta.pub_year));
  }
  if (c.require_same_volume) {
    if (meta.volume.empty()) return std::nullopt;
    append(meta.volume);
  }
  if (c.require_same_issue) {
    if (meta.issue.empty()) return std::nullopt;
    append(meta.issue);
  }
  if (c.require_same_field) {
    if (meta.field_code.empty()) return std::nullopt;
    append(meta.field_code);
  }
  return key;
}

}  // namespace

MatchResult match_controls(const CitationGraph& g, std::span<const PaperId> targets,
                           const MatchCriteria& criteria) {
  if (!criteria.require_same_venue && !criteria.require_same_year &&
      !criteria.require_same_volume && !criteria.require_same_issue &&
      !criteria.require_same_field)
    throw std::invalid_argument("match_controls: no criteria flag set");

  std::unordered_set<PaperId> target_set(targets.begin(), targets.end());

  // Bucket candidate papers by their flagged-field key.
  std::unordered_map<std::string, std::vector<PaperId>> buckets;
  for (PaperId p = 0; p < g.paper_count(); ++p) {
    if (target_set.contains(p)) continue;
    if (g.meta(p).label == Label::Nobel) continue;
    if (auto key = match_key(g.meta(p), criteria)) buckets[*key].push_back(p);
  }

  std::vector<PaperId> ordered_targets(targets.begin(), targets.end());
  std::sort(ordered_targets.begin(), ordered_targets.end());
  ordered_targets.erase(std::unique(ordered_targets.begin(), ordered_targets.end()),
                        ordered_targets.end());

  MatchResult result;
  std::unordered_set<PaperId> claimed;  // only with unique_assignment
  for (PaperId target : ordered_targets) {
    std::vector<PaperId> controls;
    auto key = match_key(g.meta(target), criteria);
    if (!key) {
      result.warnings.push_back("target " + std::to_string(g.external_id(target)) +
                                ": missing a required match field");
    } else if (auto it = buckets.find(*key); it != buckets.end()) {
      for (PaperId p : it->second) {
        if (criteria.unique_assignment && claimed.contains(p)) continue;
        controls.push_back(p);
      }
      // Dense order equals ascending external-id order.
      std::sort(controls.begin(), controls.end());
      if (criteria.max_controls_per_target &&
          controls.size() > *criteria.max_controls_per_target)
        controls.resize(*criteria.max_controls_per_target);
      if (criteria.unique_assignment)
        for (PaperId p : controls) claimed.insert(p);
    }
    result.matches.emplace_back(target, std::move(controls));
  }
  return result;
}

}  // namespace citekit
