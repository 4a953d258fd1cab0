#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "citekit/matching.hpp"
#include "citekit/testkit.hpp"

using namespace citekit;

namespace {

PaperMeta meta(const char* venue, std::int32_t year, const char* volume, const char* issue,
               const char* field, Label label = Label::Other) {
  PaperMeta m;
  m.venue_id = venue;
  m.pub_year = year;
  m.volume = volume;
  m.issue = issue;
  m.field_code = field;
  m.label = label;
  return m;
}

}  // namespace

TEST_CASE("unique exact match") {
  std::vector<std::pair<ExternalId, PaperMeta>> metas{
      {1, meta("J", 1960, "12", "3", "F", Label::Nobel)},
      {2, meta("J", 1960, "12", "3", "F")},
      {3, meta("J", 1960, "12", "4", "F")},   // wrong issue
      {4, meta("K", 1960, "12", "3", "F")},   // wrong venue
  };
  CitationGraph g = build_graph({}, metas);
  std::vector<PaperId> targets{*g.dense_id(1)};
  auto result = match_controls(g, targets, MatchCriteria{});
  REQUIRE(result.matches.size() == 1);
  REQUIRE(result.matches[0].second.size() == 1);
  CHECK(g.external_id(result.matches[0].second[0]) == 2);
  CHECK(result.warnings.empty());
}

TEST_CASE("target with a missing flagged field warns and yields nothing") {
  std::vector<std::pair<ExternalId, PaperMeta>> metas{
      {1, meta("", 1960, "12", "3", "F", Label::Nobel)},
      {2, meta("J", 1960, "12", "3", "F")},
  };
  CitationGraph g = build_graph({}, metas);
  std::vector<PaperId> targets{*g.dense_id(1)};
  auto result = match_controls(g, targets, MatchCriteria{});
  REQUIRE(result.matches.size() == 1);
  CHECK(result.matches[0].second.empty());
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("1") != std::string::npos);
}

TEST_CASE("no same-venue papers anywhere") {
  std::vector<std::pair<ExternalId, PaperMeta>> metas{
      {1, meta("J", 1960, "12", "3", "F", Label::Nobel)},
      {2, meta("K", 1960, "12", "3", "F")},
  };
  CitationGraph g = build_graph({}, metas);
  std::vector<PaperId> targets{*g.dense_id(1)};
  auto result = match_controls(g, targets, MatchCriteria{});
  CHECK(result.matches[0].second.empty());
  CHECK(result.warnings.empty());  // fields present, just no candidates
}

TEST_CASE("fifty-paper corpus agrees with the brute-force filter") {
  // Deterministic synthetic corpus with clustered venues/years.
  std::mt19937_64 gen(17);
  std::vector<std::pair<ExternalId, PaperMeta>> metas;
  for (ExternalId id = 1; id <= 50; ++id) {
    PaperMeta m = meta(("V" + std::to_string(gen() % 5)).c_str(),
                       1950 + static_cast<std::int32_t>(gen() % 5),
                       std::to_string(gen() % 3).c_str(), std::to_string(gen() % 2).c_str(),
                       ("F" + std::to_string(gen() % 2)).c_str());
    if (gen() % 6 == 0) m.label = Label::Nobel;
    metas.emplace_back(id, m);
  }
  CitationGraph g = build_graph({}, metas);
  std::vector<PaperId> targets;
  for (PaperId p = 0; p < g.paper_count(); ++p)
    if (g.meta(p).label == Label::Nobel) targets.push_back(p);
  REQUIRE(!targets.empty());

  for (auto criteria : {MatchCriteria{}, MatchCriteria{true, true, false, false, true}}) {
    auto result = match_controls(g, targets, criteria);
    std::set<PaperId> target_set(targets.begin(), targets.end());
    REQUIRE(result.matches.size() == targets.size());
    for (const auto& [target, controls] : result.matches) {
      // Oracle: exhaustive predicate scan.
      std::set<PaperId> expected;
      const PaperMeta& t = g.meta(target);
      for (PaperId p = 0; p < g.paper_count(); ++p) {
        if (p == target || target_set.contains(p)) continue;
        const PaperMeta& c = g.meta(p);
        if (c.label == Label::Nobel) continue;
        if (criteria.require_same_venue && c.venue_id != t.venue_id) continue;
        if (criteria.require_same_year && c.pub_year != t.pub_year) continue;
        if (criteria.require_same_volume && c.volume != t.volume) continue;
        if (criteria.require_same_issue && c.issue != t.issue) continue;
        if (criteria.require_same_field && c.field_code != t.field_code) continue;
        expected.insert(p);
      }
      CHECK(std::set<PaperId>(controls.begin(), controls.end()) == expected);
    }
  }
}

TEST_CASE("no target or nobel paper ever appears as a control") {
  std::vector<std::pair<ExternalId, PaperMeta>> metas{
      {1, meta("J", 1960, "1", "1", "F", Label::Nobel)},
      {2, meta("J", 1960, "1", "1", "F", Label::Nobel)},  // nobel non-target
      {3, meta("J", 1960, "1", "1", "F")},
  };
  CitationGraph g = build_graph({}, metas);
  std::vector<PaperId> targets{*g.dense_id(1)};
  auto result = match_controls(g, targets, MatchCriteria{});
  REQUIRE(result.matches.size() == 1);
  REQUIRE(result.matches[0].second.size() == 1);
  CHECK(g.external_id(result.matches[0].second[0]) == 3);
}

TEST_CASE("loosening criteria never shrinks a match list") {
  std::mt19937_64 gen(23);
  std::vector<std::pair<ExternalId, PaperMeta>> metas;
  for (ExternalId id = 1; id <= 40; ++id) {
    PaperMeta m = meta(("V" + std::to_string(gen() % 3)).c_str(),
                       1950 + static_cast<std::int32_t>(gen() % 3),
                       std::to_string(gen() % 2).c_str(), std::to_string(gen() % 2).c_str(),
                       ("F" + std::to_string(gen() % 2)).c_str(),
                       id <= 4 ? Label::Nobel : Label::Other);
    metas.emplace_back(id, m);
  }
  CitationGraph g = build_graph({}, metas);
  std::vector<PaperId> targets{0, 1, 2, 3};

  MatchCriteria tight;  // all five flags
  MatchCriteria loose = tight;
  loose.require_same_issue = false;
  auto tight_result = match_controls(g, targets, tight);
  auto loose_result = match_controls(g, targets, loose);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    CHECK(loose_result.matches[i].second.size() >= tight_result.matches[i].second.size());
    std::set<PaperId> loose_set(loose_result.matches[i].second.begin(),
                                loose_result.matches[i].second.end());
    for (PaperId p : tight_result.matches[i].second) CHECK(loose_set.contains(p));
  }
}

TEST_CASE("cap keeps the lowest external ids") {
  std::vector<std::pair<ExternalId, PaperMeta>> metas{
      {5, meta("J", 1960, "1", "1", "F", Label::Nobel)},
      {30, meta("J", 1960, "1", "1", "F")},
      {10, meta("J", 1960, "1", "1", "F")},
      {20, meta("J", 1960, "1", "1", "F")},
  };
  CitationGraph g = build_graph({}, metas);
  MatchCriteria criteria;
  criteria.max_controls_per_target = 2;
  std::vector<PaperId> targets{*g.dense_id(5)};
  auto result = match_controls(g, targets, criteria);
  REQUIRE(result.matches[0].second.size() == 2);
  CHECK(g.external_id(result.matches[0].second[0]) == 10);
  CHECK(g.external_id(result.matches[0].second[1]) == 20);
}

TEST_CASE("unique assignment removes claimed controls from later targets") {
  std::vector<std::pair<ExternalId, PaperMeta>> metas{
      {1, meta("J", 1960, "1", "1", "F", Label::Nobel)},
      {2, meta("J", 1960, "1", "1", "F", Label::Nobel)},
      {3, meta("J", 1960, "1", "1", "F")},
  };
  CitationGraph g = build_graph({}, metas);
  std::vector<PaperId> targets{*g.dense_id(1), *g.dense_id(2)};

  MatchCriteria shared;
  auto both = match_controls(g, targets, shared);
  CHECK(both.matches[0].second.size() == 1);
  CHECK(both.matches[1].second.size() == 1);  // same paper serves twice

  MatchCriteria unique = shared;
  unique.unique_assignment = true;
  auto result = match_controls(g, targets, unique);
  CHECK(result.matches[0].second.size() == 1);
  CHECK(result.matches[1].second.empty());
}

TEST_CASE("at least one flag is required") {
  std::vector<std::pair<ExternalId, PaperMeta>> metas{{1, {}}};
  CitationGraph g = build_graph({}, metas);
  MatchCriteria none{false, false, false, false, false};
  std::vector<PaperId> targets{0};
  CHECK_THROWS_AS(match_controls(g, targets, none), std::invalid_argument);
}

TEST_CASE("matching is deterministic") {
  auto corpus_metas = testkit::g1_papers();
  CitationGraph g = build_graph(testkit::g1_edges(), corpus_metas);
  std::vector<PaperId> targets{*g.dense_id(1)};
  auto a = match_controls(g, targets, MatchCriteria{});
  auto b = match_controls(g, targets, MatchCriteria{});
  CHECK(a.matches == b.matches);
}
