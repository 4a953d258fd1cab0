#include "citekit/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace citekit::testkit {
namespace {

double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Poisson via inversion of the product of uniforms (Knuth); fine for small
// means.
std::uint32_t poisson(std::mt19937_64& gen, double mean) {
  double limit = std::exp(-mean);
  double product = unit_uniform(gen);
  std::uint32_t k = 0;
  while (product > limit) {
    product *= unit_uniform(gen);
    ++k;
  }
  return k;
}

}  // namespace

SynthCorpus synth_graph(const SynthParams& params) {
  if (params.edge_density < 0.0 || params.edge_density > 1.0)
    throw std::invalid_argument("synth_graph: edge_density outside [0,1]");
  if (params.attachment_strength < 0.0 || params.attachment_strength > 1.0)
    throw std::invalid_argument("synth_graph: attachment_strength outside [0,1]");
  if (params.mean_out_degree < 0.0)
    throw std::invalid_argument("synth_graph: negative mean_out_degree");
  if (params.year_max < params.year_min)
    throw std::invalid_argument("synth_graph: empty year range");
  if (params.venue_count == 0) throw std::invalid_argument("synth_graph: no venues");

  SynthCorpus corpus;
  const std::uint32_t n = params.n_papers;
  if (n == 0) return corpus;

  std::mt19937_64 gen(params.seed);

  // External ids are strictly increasing with random gaps so remapping stays
  // non-trivial while dense order still equals generation order.
  std::vector<ExternalId> ids(n);
  ExternalId next = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    next += 1 + gen() % 7;
    ids[i] = next;
  }

  corpus.papers.reserve(n);
  const std::int64_t span = params.year_max - params.year_min;
  for (std::uint32_t i = 0; i < n; ++i) {
    PaperMeta meta;
    meta.pub_year = params.year_min +
                    static_cast<std::int32_t>(n > 1 ? span * i / (n - 1) : 0);
    meta.venue_id = "V" + std::to_string(gen() % params.venue_count);
    meta.volume = std::to_string(1 + gen() % 40);
    meta.issue = std::to_string(1 + gen() % 12);
    meta.field_code = "F" + std::to_string(gen() % 3 + 1);
    meta.team_size = static_cast<std::int32_t>(1 + gen() % params.max_team_size);
    meta.page_length = static_cast<std::int32_t>(1 + gen() % 30);
    meta.title = "paper " + std::to_string(ids[i]);
    meta.label = unit_uniform(gen) < params.nobel_fraction ? Label::Nobel : Label::Other;
    corpus.papers.emplace_back(ids[i], std::move(meta));
  }

  if (params.model == SynthParams::EdgeModel::Density) {
    for (std::uint32_t citing = 1; citing < n; ++citing) {
      for (std::uint32_t cited = 0; cited < citing; ++cited) {
        if (unit_uniform(gen) < params.edge_density)
          corpus.edges.push_back({ids[citing], ids[cited]});
      }
    }
  } else {
    // Newer papers cite older ones; with probability attachment_strength a
    // reference is the cited end of a uniformly random existing edge (classic
    // degree-proportional attachment), otherwise a uniform older paper.
    std::vector<std::uint32_t> cited_ends;
    for (std::uint32_t citing = 1; citing < n; ++citing) {
      std::uint32_t refs = poisson(gen, params.mean_out_degree);
      std::unordered_set<std::uint32_t> chosen;
      std::uint32_t attempts = 0;
      while (chosen.size() < refs && attempts < 4 * refs + 16) {
        ++attempts;
        std::uint32_t cited;
        if (!cited_ends.empty() && unit_uniform(gen) < params.attachment_strength)
          cited = cited_ends[gen() % cited_ends.size()];
        else
          cited = static_cast<std::uint32_t>(gen() % citing);
        chosen.insert(cited);
      }
      std::vector<std::uint32_t> sorted(chosen.begin(), chosen.end());
      std::sort(sorted.begin(), sorted.end());
      for (std::uint32_t cited : sorted) {
        corpus.edges.push_back({ids[citing], ids[cited]});
        cited_ends.push_back(cited);
      }
    }
  }
  return corpus;
}

std::vector<Edge> g1_edges() {
  return {{4, 1}, {5, 1}, {6, 1}, {1, 2}, {1, 3}, {4, 2}, {7, 2}, {7, 3}, {8, 3}};
}

std::vector<std::pair<ExternalId, PaperMeta>> g1_papers() {
  auto meta = [](const char* title, Label label) {
    PaperMeta m;
    m.pub_year = 1960;
    m.venue_id = "J";
    m.volume = "12";
    m.issue = "3";
    m.field_code = "F1";
    m.team_size = 2;
    m.page_length = 10;
    m.title = title;
    m.label = label;
    return m;
  };
  return {
      {1, meta("focal paper", Label::Nobel)}, {2, meta("reference one", Label::Other)},
      {3, meta("reference two", Label::Other)}, {4, meta("citer one", Label::Other)},
      {5, meta("citer two", Label::Other)},     {6, meta("citer three", Label::Other)},
      {7, meta("extra one", Label::Other)},     {8, meta("extra two", Label::Other)},
  };
}

CitationPartition oracle_partition(std::span<const Edge> edges, ExternalId focal) {
  std::set<std::pair<ExternalId, ExternalId>> edge_set;
  for (const Edge& e : edges)
    if (e.citing != e.cited) edge_set.insert({e.citing, e.cited});

  std::set<ExternalId> citers, references;
  for (const auto& [u, v] : edge_set) {
    if (v == focal) citers.insert(u);
    if (u == focal) references.insert(v);
  }
  std::set<ExternalId> reference_citers;
  for (const auto& [u, v] : edge_set) {
    if (u != focal && references.contains(v)) reference_citers.insert(u);
  }
  std::set<ExternalId> consolidating;
  std::set_intersection(reference_citers.begin(), reference_citers.end(), citers.begin(),
                        citers.end(), std::inserter(consolidating, consolidating.begin()));

  CitationPartition part;
  part.c = static_cast<std::uint32_t>(citers.size());
  part.cc = static_cast<std::uint32_t>(consolidating.size());
  part.dc = part.c - part.cc;
  part.rc_total = static_cast<std::uint32_t>(reference_citers.size());
  part.n_r = part.rc_total - part.cc;
  return part;
}

TestResult oracle_mwu(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("oracle_mwu: empty sample");
  const std::size_t n1 = a.size(), n = a.size() + b.size();
  if (n > 20) throw std::invalid_argument("oracle_mwu: input too large to enumerate");

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());

  auto u_of = [&](const std::vector<bool>& in_a) {
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_a[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (in_a[j]) continue;
        if (pooled[i] > pooled[j]) u += 1.0;
        else if (pooled[i] == pooled[j]) u += 0.5;
      }
    }
    return u;
  };

  std::vector<bool> observed(n, false);
  for (std::size_t i = 0; i < n1; ++i) observed[i] = true;
  double u_a = u_of(observed);
  double u_b = static_cast<double>(n1) * static_cast<double>(n - n1) - u_a;
  double u_min = std::min(u_a, u_b);

  // Every subset of size n1 via next_permutation over a false..true selector.
  // U values are exact multiples of 0.5, so the tail comparison is exact.
  std::vector<bool> selector(n, false);
  for (std::size_t i = n - n1; i < n; ++i) selector[i] = true;
  std::uint64_t total = 0, tail = 0;
  do {
    ++total;
    if (u_of(selector) <= u_min) ++tail;
  } while (std::next_permutation(selector.begin(), selector.end()));

  TestResult result;
  result.statistic = u_a;
  result.method = TestMethod::Exact;
  result.p_value = std::min(1.0, 2.0 * static_cast<double>(tail) / static_cast<double>(total));
  return result;
}

double oracle_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("oracle_tau: length mismatch");
  const std::size_t n = x.size();
  if (n < 2 || n > 500) throw std::invalid_argument("oracle_tau: size out of range");

  double concordant = 0.0, discordant = 0.0;
  double tie_pairs_x = 0.0, tie_pairs_y = 0.0;  // includes pairs tied in both
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0.0) ++tie_pairs_x;
      if (dy == 0.0) ++tie_pairs_y;
      if (dx * dy > 0.0) ++concordant;
      else if (dx * dy < 0.0) ++discordant;
    }
  }
  double n0 = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  double denom = std::sqrt((n0 - tie_pairs_x) * (n0 - tie_pairs_y));
  if (denom == 0.0) throw std::invalid_argument("oracle_tau: all-tied argument");
  return (concordant - discordant) / denom;
}

OracleTopK oracle_topk(const RankedSample& sample) {
  const std::size_t n = sample.scores.size();
  if (n == 0 || sample.is_positive.size() != n)
    throw std::invalid_argument("oracle_topk: bad sample");
  double total_pos = 0.0;
  for (bool b : sample.is_positive) total_pos += b ? 1.0 : 0.0;
  if (total_pos == 0.0) throw std::invalid_argument("oracle_topk: no positives");

  auto top_cut = [&](std::size_t size) {
    // Fresh sort per cut, deliberately naive.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
      if (sample.scores[p] != sample.scores[q]) return sample.scores[p] > sample.scores[q];
      return p < q;
    });
    double tp = 0.0;
    for (std::size_t k = 0; k < size; ++k)
      if (sample.is_positive[order[k]]) tp += 1.0;
    return tp;
  };

  OracleTopK out;
  double ip_sum = 0.0;
  for (std::size_t f = 1; f <= 100; ++f) {
    // Smallest cut with cut/n >= f/100, found by exact counting: floating
    // ceil(f/100*n) misrounds near integer boundaries (e.g. f=68, n=75).
    std::size_t cut = 1;
    while (cut * 100 < f * n) ++cut;
    double ip = top_cut(cut) / total_pos;
    out.ip.curve[f - 1] = ip;
    ip_sum += ip;
  }
  out.ip.average = ip_sum / 100.0;

  for (std::size_t k = 1; k <= n; ++k) {
    double tp = top_cut(k);
    double precision = tp / static_cast<double>(k);
    double recall = tp / total_pos;
    double f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    out.classification.precision += precision;
    out.classification.recall += recall;
    out.classification.f1 += f1;
  }
  out.classification.precision /= static_cast<double>(n);
  out.classification.recall /= static_cast<double>(n);
  out.classification.f1 /= static_cast<double>(n);

  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!sample.is_positive[i]) continue;
    double greater = 0.0, equal = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (sample.scores[j] > sample.scores[i]) greater += 1.0;
      else if (sample.scores[j] == sample.scores[i]) equal += 1.0;
    }
    rank_sum += (greater + (equal + 1.0) / 2.0) / static_cast<double>(n);
  }
  out.average_ranking = rank_sum / total_pos;
  return out;
}

}  // namespace citekit::testkit
