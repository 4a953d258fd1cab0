#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "citekit/graph.hpp"
#include "citekit/ingest.hpp"

using namespace citekit;

TEST_CASE("two well-formed edge lines") {
  std::istringstream in("1\t2\n3\t1\n");
  auto [edges, stats] = parse_edges(in);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == Edge{1, 2});
  CHECK(edges[1] == Edge{3, 1});
  CHECK(stats.lines_read == 2);
  CHECK(stats.edges_kept == 2);
}

TEST_CASE("lenient mode skips malformed lines") {
  std::istringstream in("1\t2\nbogus\n");
  auto [edges, stats] = parse_edges(in, EdgeFormat::Tsv, ParseMode::Lenient);
  REQUIRE(edges.size() == 1);
  CHECK(stats.parse_failures == 1);
}

TEST_CASE("strict mode aborts with the line number") {
  std::istringstream in("1\t2\nbogus\n");
  CHECK_THROWS_WITH_AS(parse_edges(in, EdgeFormat::Tsv, ParseMode::Strict),
                       doctest::Contains("line 2"), ParseError);
}

TEST_CASE("header, blank lines, CRLF, csv") {
  std::istringstream in("citing,cited\r\n\r\n1,2\r\n");
  auto [edges, stats] = parse_edges(in, EdgeFormat::Csv, ParseMode::Strict);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0] == Edge{1, 2});
  CHECK(stats.lines_read == 3);
}

TEST_CASE("header only tolerated as the first data line") {
  std::istringstream in("1\t2\nciting\tcited\n");
  auto [edges, stats] = parse_edges(in);
  CHECK(edges.size() == 1);
  CHECK(stats.parse_failures == 1);
}

TEST_CASE("paper row with every field") {
  std::istringstream in(
      "42\t1981\tJ7\t12\t3\tF2\t4\t18\tnobel\tSome Title\tAn abstract.\n");
  auto [rows, stats] = parse_papers(in);
  REQUIRE(rows.size() == 1);
  const auto& [id, m] = rows[0];
  CHECK(id == 42);
  CHECK(m.pub_year == 1981);
  CHECK(m.venue_id == "J7");
  CHECK(m.volume == "12");
  CHECK(m.issue == "3");
  CHECK(m.field_code == "F2");
  CHECK(m.team_size == 4);
  CHECK(m.page_length == 18);
  CHECK(m.label == Label::Nobel);
  CHECK(m.title == "Some Title");
  CHECK(m.abstract == "An abstract.");
}

TEST_CASE("empty abstract column means absent") {
  std::istringstream in("1\t1950\tJ\t\t\t\t\t\tother\tT\t\n");
  auto [rows, stats] = parse_papers(in);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].second.abstract.has_value());
  CHECK_FALSE(rows[0].second.team_size.has_value());
  CHECK(rows[0].second.volume.empty());
}

TEST_CASE("abstract column may be omitted entirely") {
  std::istringstream in("1\t1950\tJ\t\t\t\t\t\tother\tT\n");
  auto [rows, stats] = parse_papers(in);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].second.abstract.has_value());
}

TEST_CASE("labels fold case") {
  std::istringstream in("1\t1950\tJ\t\t\t\t\t\tNOBEL\tT\t\n");
  auto [rows, stats] = parse_papers(in);
  CHECK(rows[0].second.label == Label::Nobel);
}

TEST_CASE("paper parse errors") {
  SUBCASE("wrong column count") {
    std::istringstream in("1\t1950\tJ\n");
    CHECK_THROWS_AS(parse_papers(in), ParseError);
  }
  SUBCASE("non-integer year") {
    std::istringstream in("1\tMCMXC\tJ\t\t\t\t\t\tother\tT\t\n");
    CHECK_THROWS_AS(parse_papers(in), ParseError);
  }
  SUBCASE("year out of range") {
    std::istringstream in("1\t1750\tJ\t\t\t\t\t\tother\tT\t\n");
    CHECK_THROWS_AS(parse_papers(in), ParseError);
  }
  SUBCASE("bad team size") {
    std::istringstream in("1\t1950\tJ\t\t\t\t0\t\tother\tT\t\n");
    CHECK_THROWS_AS(parse_papers(in), ParseError);
  }
  SUBCASE("unknown label") {
    std::istringstream in("1\t1950\tJ\t\t\t\t\t\twinner\tT\t\n");
    CHECK_THROWS_AS(parse_papers(in), ParseError);
  }
  SUBCASE("lenient mode counts instead") {
    std::istringstream in("1\t1950\tJ\t\t\t\t\t\twinner\tT\t\n2\t1950\tJ\t\t\t\t\t\tother\tT\t\n");
    auto [rows, stats] = parse_papers(in, ParseMode::Lenient);
    CHECK(rows.size() == 1);
    CHECK(stats.parse_failures == 1);
  }
}

TEST_CASE("remap assigns dense ids by ascending external id") {
  std::vector<std::pair<ExternalId, PaperMeta>> metas{{100, {}}, {7, {}}, {55, {}}};
  auto result = remap({}, metas);
  CHECK(result.map.dense_of(7) == PaperId{0});
  CHECK(result.map.dense_of(55) == PaperId{1});
  CHECK(result.map.dense_of(100) == PaperId{2});
  CHECK_FALSE(result.map.dense_of(8).has_value());
}

TEST_CASE("remap rejects a duplicate meta id by name") {
  std::vector<std::pair<ExternalId, PaperMeta>> metas{{7, {}}, {9, {}}, {7, {}}};
  CHECK_THROWS_WITH_AS(remap({}, metas), doctest::Contains("7"), std::invalid_argument);
}

TEST_CASE("remap round-trips 1000 random ids") {
  std::mt19937_64 gen(99);
  std::vector<std::pair<ExternalId, PaperMeta>> metas;
  std::set<ExternalId> used;
  while (used.size() < 1000) {
    ExternalId id = gen();
    if (used.insert(id).second) metas.emplace_back(id, PaperMeta{});
  }
  auto result = remap({}, metas);
  REQUIRE(result.map.size() == 1000);
  for (const auto& [id, meta] : metas) {
    auto dense = result.map.dense_of(id);
    REQUIRE(dense.has_value());
    CHECK(result.map.external_of(*dense) == id);
  }
  for (PaperId d = 0; d < 1000; ++d)
    CHECK(result.map.dense_of(result.map.external_of(d)) == d);
}

namespace {

// Generates a large edge file on the fly (64 KiB windows) so the parser is
// never handed the whole input at once, and tracks ground-truth counts.
class GeneratedEdgeStream : public std::streambuf {
 public:
  struct Truth {
    std::uint64_t valid = 0, duplicates = 0, self_loops = 0, malformed = 0, blank = 0;
    std::set<std::pair<ExternalId, ExternalId>> unique_edges;
  };

  GeneratedEdgeStream(std::uint64_t lines, std::uint64_t seed) : lines_(lines), gen_(seed) {}
  const Truth& truth() const { return truth_; }

 protected:
  int underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    buffer_.clear();
    while (emitted_ < lines_ && buffer_.size() < 64 * 1024) emit_line();
    if (buffer_.empty()) return traits_type::eof();
    setg(buffer_.data(), buffer_.data(), buffer_.data() + buffer_.size());
    return traits_type::to_int_type(*gptr());
  }

 private:
  void emit_line() {
    ++emitted_;
    switch (gen_() % 10) {
      case 0: {  // duplicate of a known edge
        if (!truth_.unique_edges.empty()) {
          auto it = truth_.unique_edges.begin();
          std::advance(it, gen_() % std::min<std::size_t>(truth_.unique_edges.size(), 32));
          append(std::to_string(it->first) + "\t" + std::to_string(it->second) + "\n");
          ++truth_.duplicates;
          return;
        }
        [[fallthrough]];
      }
      case 1: {
        ExternalId v = 1 + gen_() % 5000;
        append(std::to_string(v) + "\t" + std::to_string(v) + "\n");
        ++truth_.self_loops;
        return;
      }
      case 2:
        append("not an edge\n");
        ++truth_.malformed;
        return;
      case 3:
        append("\n");
        ++truth_.blank;
        return;
      default: {
        ExternalId a = 1 + gen_() % 5000, b = 1 + gen_() % 5000;
        if (a == b) b = a + 1;
        append(std::to_string(a) + "\t" + std::to_string(b) + "\n");
        if (truth_.unique_edges.insert({a, b}).second) ++truth_.valid;
        else ++truth_.duplicates;
        return;
      }
    }
  }

  void append(const std::string& s) { buffer_.insert(buffer_.end(), s.begin(), s.end()); }

  std::uint64_t lines_, emitted_ = 0;
  std::mt19937_64 gen_;
  std::vector<char> buffer_;
  Truth truth_;
};

}  // namespace

TEST_CASE("a million generated lines are fully accounted for") {
  GeneratedEdgeStream buf(1'000'000, 2024);
  std::istream in(&buf);
  auto [edges, stats] = parse_edges(in, EdgeFormat::Tsv, ParseMode::Lenient);
  const auto& truth = buf.truth();

  CHECK(stats.lines_read == 1'000'000);
  CHECK(stats.parse_failures == truth.malformed);
  CHECK(stats.edges_kept == truth.valid + truth.duplicates + truth.self_loops);

  CitationGraph g = build_graph(edges, {});
  CHECK(g.edge_count() == truth.valid);
  CHECK(g.duplicate_edges_dropped() == truth.duplicates);
  CHECK(g.self_loops_dropped() == truth.self_loops);

  // Every non-blank data line lands in exactly one bucket.
  CHECK(g.edge_count() + g.duplicate_edges_dropped() + g.self_loops_dropped() +
            stats.parse_failures + truth.blank ==
        stats.lines_read);
}

TEST_CASE("identical bytes give identical outputs") {
  std::string data = "5\t1\n5\t1\n2\t3\njunk\n\n9\t9\n";
  std::istringstream a(data), b(data);
  auto [ea, sa] = parse_edges(a);
  auto [eb, sb] = parse_edges(b);
  CHECK(ea == eb);
  CHECK(sa.lines_read == sb.lines_read);
  CHECK(sa.edges_kept == sb.edges_kept);
  CHECK(sa.parse_failures == sb.parse_failures);
}
