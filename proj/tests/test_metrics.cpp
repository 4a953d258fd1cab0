#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "citekit/metrics.hpp"
#include "citekit/testkit.hpp"

using namespace citekit;

namespace {

CitationGraph g1() { return build_graph(testkit::g1_edges(), testkit::g1_papers()); }

}  // namespace

TEST_CASE("G1 focal partition matches the hand-checked oracle") {
  CitationGraph g = g1();
  PaperId fp = *g.dense_id(testkit::kG1FocalPaper);
  CitationPartition p = citation_partition(g, fp);
  CHECK(p.c == 3);
  CHECK(p.cc == 1);
  CHECK(p.dc == 2);
  CHECK(p.n_r == 2);
  CHECK(p.rc_total == 3);
  CHECK(p == testkit::oracle_partition(testkit::g1_edges(), testkit::kG1FocalPaper));
}

TEST_CASE("isolated node has an all-zero partition") {
  std::vector<std::pair<ExternalId, PaperMeta>> metas{{1, {}}};
  CitationGraph g = build_graph({}, metas);
  CitationPartition p = citation_partition(g, 0);
  CHECK(p == CitationPartition{0, 0, 0, 0, 0});
  CHECK_FALSE(cd_index(p).has_value());
  CHECK_FALSE(di_star(p).has_value());
  CHECK_FALSE(simple_di(p).has_value());
}

TEST_CASE("zero references with citations: every index is 1") {
  // The pattern of every Ref=0 top-DC row: all citers are disruptive.
  std::vector<Edge> edges;
  for (ExternalId c = 2; c <= 9; ++c) edges.push_back({c, 1});
  CitationGraph g = build_graph(edges, {});
  CitationPartition p = citation_partition(g, *g.dense_id(1));
  CHECK(p.c == 8);
  CHECK(p.dc == 8);
  CHECK(p.cc == 0);
  CHECK(p.n_r == 0);
  for (auto mode : {DenominatorMode::Partition, DenominatorMode::Literal}) {
    CHECK(cd_index(p, mode) == 1.0);
    CHECK(di_star(p, mode) == 1.0);
  }
  CHECK(simple_di(p) == 1.0);
}

TEST_CASE("G1 index values, both denominator modes") {
  CitationGraph g = g1();
  CitationPartition p = citation_partition(g, *g.dense_id(1));
  CHECK(cd_index(p, DenominatorMode::Partition) == 0.2);
  CHECK(cd_index(p, DenominatorMode::Literal) == 1.0 / 6.0);
  CHECK(di_star(p, DenominatorMode::Partition) == 0.4);
  CHECK(simple_di(p) == 2.0 / 3.0);
}

TEST_CASE("mid-rank percentiles") {
  using V = std::vector<std::optional<double>>;
  SUBCASE("distinct values") {
    auto r = percentile_ranks(V{10.0, 20.0, 30.0});
    CHECK(r.percentiles == std::vector<double>{1.0 / 6.0, 0.5, 5.0 / 6.0});
  }
  SUBCASE("all tied") {
    auto r = percentile_ranks(V{7.0, 7.0, 7.0});
    CHECK(r.percentiles == std::vector<double>{0.5, 0.5, 0.5});
  }
  SUBCASE("single element") {
    auto r = percentile_ranks(V{5.0});
    CHECK(r.percentiles == std::vector<double>{0.5});
  }
  SUBCASE("absent inputs get 0 and a flag") {
    auto r = percentile_ranks(V{std::nullopt, 4.0});
    CHECK(r.percentiles[0] == 0.0);
    CHECK_FALSE(r.defined[0]);
    CHECK(r.defined[1]);
  }
  SUBCASE("all absent is an error") {
    CHECK_THROWS_AS(percentile_ranks(V{std::nullopt, std::nullopt}), std::invalid_argument);
  }
}

TEST_CASE("G1 metric table over all 8 papers, pooled percentiles") {
  CitationGraph g = g1();
  std::vector<PaperId> sample(g.paper_count());
  std::iota(sample.begin(), sample.end(), 0);
  MetricTableOptions options;
  options.scope = PercentileScope::Pooled;
  auto rows = compute_metric_table(g, sample, options);
  REQUIRE(rows.size() == 8);

  // Frozen from the set-based oracle: citation counts are [3,3,3,0,0,0,0,0]
  // (fp, r1, r2 at 3), cd values are [0.2, 1, 1, 0, 0, 0, 0, 0].
  PaperId fp = *g.dense_id(1);
  const MetricRow& fp_row = rows[fp];
  CHECK(fp_row.partition.c == 3);
  CHECK(fp_row.cp == 13.0 / 16.0);
  CHECK(fp_row.cdp == 11.0 / 16.0);
  CHECK(fp_row.c_cd_p == 13.0 / 16.0 + 11.0 / 16.0);
  const MetricRow& r1_row = rows[*g.dense_id(2)];
  CHECK(r1_row.cd_index == 1.0);
  CHECK(r1_row.cdp == 14.0 / 16.0);
  const MetricRow& c1_row = rows[*g.dense_id(4)];
  CHECK(c1_row.partition.c == 0);
  CHECK(c1_row.cp == 5.0 / 16.0);

  // Cross-check every row against an independent mid-rank scan.
  for (const MetricRow& row : rows) {
    double below = 0, equal = 0;
    for (const MetricRow& other : rows) {
      if (other.partition.c < row.partition.c) ++below;
      else if (other.partition.c == row.partition.c) ++equal;
    }
    CHECK(row.cp == (below + 0.5 * equal) / 8.0);
  }
}

TEST_CASE("single-paper sample percentiles") {
  CitationGraph g = g1();
  std::vector<PaperId> sample{*g.dense_id(1)};
  auto rows = compute_metric_table(g, sample);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].cp == 0.5);
  CHECK(rows[0].cdp == 0.5);
  CHECK(rows[0].c_cd_p == 1.0);
}

TEST_CASE("permuting the sample permutes the rows") {
  CitationGraph g = g1();
  std::vector<PaperId> sample{0, 1, 2, 3, 4, 5, 6, 7};
  MetricTableOptions options;
  options.scope = PercentileScope::Pooled;
  auto rows = compute_metric_table(g, sample, options);
  std::vector<PaperId> shuffled{5, 2, 7, 0, 3, 6, 1, 4};
  auto rows2 = compute_metric_table(g, shuffled, options);
  for (std::size_t i = 0; i < shuffled.size(); ++i) {
    CHECK(rows2[i].paper == shuffled[i]);
    const MetricRow& original = rows[shuffled[i]];
    CHECK(rows2[i].partition == original.partition);
    CHECK(rows2[i].cp == original.cp);
    CHECK(rows2[i].cdp == original.cdp);
  }
}

TEST_CASE("sample validation") {
  CitationGraph g = g1();
  CHECK_THROWS_AS(compute_metric_table(g, {}), std::invalid_argument);
  std::vector<PaperId> dup{0, 1, 0};
  CHECK_THROWS_AS(compute_metric_table(g, dup), std::invalid_argument);
  std::vector<PaperId> bad{42};
  CHECK_THROWS_AS(compute_metric_table(g, bad), std::out_of_range);
}

TEST_CASE("percentiles within field stay inside the field group") {
  // Field A: counts {1, 0}. Field B: counts {2, 0, 0}.
  std::vector<Edge> edges{{10, 1}, {20, 2}, {21, 2}};
  auto meta_with_field = [](const char* f) {
    PaperMeta m;
    m.field_code = f;
    return m;
  };
  std::vector<std::pair<ExternalId, PaperMeta>> metas{
      {1, meta_with_field("A")},  {10, meta_with_field("A")},
      {2, meta_with_field("B")},  {20, meta_with_field("B")},
      {21, meta_with_field("B")}};
  CitationGraph g = build_graph(edges, metas);
  std::vector<PaperId> sample(g.paper_count());
  std::iota(sample.begin(), sample.end(), 0);

  MetricTableOptions within;
  within.scope = PercentileScope::WithinField;
  auto rows = compute_metric_table(g, sample, within);
  auto row_of = [&](ExternalId id) {
    return *std::find_if(rows.begin(), rows.end(),
                         [&](const MetricRow& r) { return g.external_id(r.paper) == id; });
  };
  CHECK(row_of(1).cp == 0.75);        // field A, count 1 of {1,0}
  CHECK(row_of(10).cp == 0.25);       // field A, count 0
  CHECK(row_of(2).cp == 5.0 / 6.0);   // field B, count 2 of {2,0,0}
  CHECK(row_of(20).cp == 1.0 / 3.0);  // field B, count 0 (tied pair)

  MetricTableOptions pooled;
  pooled.scope = PercentileScope::Pooled;
  rows = compute_metric_table(g, sample, pooled);
  // Pooled counts are [1,0,2,0,0].
  CHECK(row_of(1).cp == 0.7);
  CHECK(row_of(2).cp == 0.9);
  CHECK(row_of(20).cp == 0.3);
}

TEST_CASE("fast kernel equals the set oracle on random graphs") {
  std::uint64_t checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    testkit::SynthParams params;
    params.n_papers = 10 + (seed * 13) % 50;
    params.edge_density = 0.02 + 0.08 * static_cast<double>(seed % 5) / 5.0;
    params.seed = 1000 + seed;
    auto corpus = testkit::synth_graph(params);
    CitationGraph g = build_graph(corpus.edges, corpus.papers);
    PartitionKernel kernel(g);
    for (PaperId p = 0; p < g.paper_count(); ++p) {
      CitationPartition fast = kernel(p);
      CitationPartition slow = testkit::oracle_partition(corpus.edges, g.external_id(p));
      REQUIRE(fast == slow);
      CHECK(fast.dc + fast.cc == fast.c);
      CHECK(fast.cc <= fast.rc_total);
      for (auto mode : {DenominatorMode::Partition, DenominatorMode::Literal}) {
        auto cd = cd_index(fast, mode);
        if (cd) CHECK((*cd >= -1.0 && *cd <= 1.0));
        auto di = di_star(fast, mode);
        if (di) CHECK((*di >= 0.0 && *di <= 1.0));
      }
      auto sdi = simple_di(fast);
      auto di = di_star(fast);
      auto cd = cd_index(fast);
      if (sdi && di) CHECK(*sdi >= *di);
      if (di && cd) CHECK(*di >= *cd);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("a fresh citer that ignores the references bumps dc only") {
  auto edges = testkit::g1_edges();
  CitationGraph before = build_graph(edges, {});
  CitationPartition p_before = citation_partition(before, *before.dense_id(1));

  edges.push_back({99, 1});  // new citer of fp, cites nothing else
  CitationGraph after = build_graph(edges, {});
  CitationPartition p_after = citation_partition(after, *after.dense_id(1));

  CHECK(p_after.dc == p_before.dc + 1);
  CHECK(p_after.cc == p_before.cc);
  CHECK(p_after.n_r == p_before.n_r);
}

TEST_CASE("metric table writes and reads back exactly") {
  CitationGraph g = g1();
  std::vector<PaperId> sample(g.paper_count());
  std::iota(sample.begin(), sample.end(), 0);
  MetricTableOptions options;
  options.scope = PercentileScope::Pooled;
  auto rows = compute_metric_table(g, sample, options);

  std::ostringstream out;
  write_metric_table(out, g, rows, "test run");
  std::istringstream in(out.str());
  auto parsed = read_metric_table(in);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].id == g.external_id(rows[i].paper));
    CHECK(parsed[i].c == rows[i].partition.c);
    CHECK(parsed[i].dc == rows[i].partition.dc);
    CHECK(parsed[i].cd_index == rows[i].cd_index);
    CHECK(parsed[i].cp == rows[i].cp);
    CHECK(parsed[i].c_cd_p == rows[i].c_cd_p);
    CHECK(parsed[i].label == g.meta(rows[i].paper).label);
    CHECK(parsed[i].pub_year == g.meta(rows[i].paper).pub_year);
  }
}

TEST_CASE("reading a table without required columns fails") {
  std::istringstream in("id\tc\n1\t2\n");
  CHECK_THROWS_WITH_AS(read_metric_table(in), doctest::Contains("missing required column"),
                       std::runtime_error);
}

TEST_CASE("table computation is identical across thread counts") {
  testkit::SynthParams params;
  params.n_papers = 200;
  params.edge_density = 0.03;
  params.seed = 5;
  auto corpus = testkit::synth_graph(params);
  CitationGraph g = build_graph(corpus.edges, corpus.papers);
  std::vector<PaperId> sample(g.paper_count());
  std::iota(sample.begin(), sample.end(), 0);

  MetricTableOptions one, eight;
  one.threads = 1;
  eight.threads = 8;
  auto a = compute_metric_table(g, sample, one);
  auto b = compute_metric_table(g, sample, eight);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].partition == b[i].partition);
    CHECK(a[i].cd_index == b[i].cd_index);
    CHECK(a[i].cp == b[i].cp);
  }
}
