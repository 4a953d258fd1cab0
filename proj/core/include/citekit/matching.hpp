#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citekit/graph.hpp"

namespace citekit {

/// Which metadata fields a control paper must share with its target. At least
/// one flag must be set.
struct MatchCriteria {
  bool require_same_venue = true;
  bool require_same_year = true;
  bool require_same_volume = true;
  bool require_same_issue = true;
  bool require_same_field = true;
  std::optional<std::uint32_t> max_controls_per_target;
  /// Assign each control to at most one target, greedily in ascending target
  /// order. Off by default: a paper may serve several targets.
  bool unique_assignment = false;
};

struct MatchResult {
  /// One entry per target, ascending by dense id; controls sorted ascending
  /// by external id.
  std::vector<std::pair<PaperId, std::vector<PaperId>>> matches;
  std::vector<std::string> warnings;  // targets skipped for missing fields
};

/// All non-target, non-nobel papers agreeing with each target on every
/// flagged field. A target missing a flagged field gets a warning and an
/// empty list. Deterministic; matched papers are reported, not relabeled —
/// the caller applies label=control. Throws std::invalid_argument when no
/// criteria flag is set.
MatchResult match_controls(const CitationGraph& g, std::span<const PaperId> targets,
                           const MatchCriteria& criteria);

}  // namespace citekit
