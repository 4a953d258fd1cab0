#include "citekit/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace citekit {
namespace {

void check_sample(const RankedSample& sample) {
  if (sample.scores.size() != sample.is_positive.size())
    throw std::invalid_argument("ranked sample: parallel lists differ in length");
  if (sample.scores.empty()) throw std::invalid_argument("ranked sample: empty");
  if (std::none_of(sample.is_positive.begin(), sample.is_positive.end(),
                   [](bool b) { return b; }))
    throw std::invalid_argument("ranked sample: no positives");
}

// Positions sorted by descending score, ascending position on ties.
std::vector<std::size_t> top_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

}  // namespace

double average_ranking(const RankedSample& sample) {
  check_sample(sample);
  const std::size_t n = sample.scores.size();
  double total = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!sample.is_positive[i]) continue;
    std::size_t greater = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (sample.scores[j] > sample.scores[i]) ++greater;
      else if (sample.scores[j] == sample.scores[i]) ++equal;
    }
    double mid_rank = static_cast<double>(greater) + (static_cast<double>(equal) + 1.0) / 2.0;
    total += mid_rank / static_cast<double>(n);
    ++positives;
  }
  return total / static_cast<double>(positives);
}

IpCurve identification_proportion(const RankedSample& sample) {
  check_sample(sample);
  const std::size_t n = sample.scores.size();
  auto order = top_order(sample.scores);
  std::vector<std::size_t> positives_in_top(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k)
    positives_in_top[k + 1] = positives_in_top[k] + (sample.is_positive[order[k]] ? 1 : 0);
  const double total_pos = static_cast<double>(positives_in_top[n]);

  IpCurve result;
  double sum = 0.0;
  for (std::size_t f = 1; f <= 100; ++f) {
    std::size_t cut = (f * n + 99) / 100;  // ceil(f/100 * N)
    double ip = static_cast<double>(positives_in_top[cut]) / total_pos;
    result.curve[f - 1] = ip;
    sum += ip;
  }
  result.average = sum / 100.0;
  return result;
}

ClassificationAverages classification_curve(const RankedSample& sample) {
  check_sample(sample);
  const std::size_t n = sample.scores.size();
  auto order = top_order(sample.scores);
  double total_pos = 0.0;
  for (bool b : sample.is_positive) total_pos += b ? 1.0 : 0.0;

  ClassificationAverages avg;
  double tp = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    tp += sample.is_positive[order[k - 1]] ? 1.0 : 0.0;
    double precision = tp / static_cast<double>(k);
    double recall = tp / total_pos;
    double f1 = (precision + recall) > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    avg.precision += precision;
    avg.recall += recall;
    avg.f1 += f1;
  }
  avg.precision /= static_cast<double>(n);
  avg.recall /= static_cast<double>(n);
  avg.f1 /= static_cast<double>(n);
  return avg;
}

namespace {

double normal_sf_two_tailed(double z_abs) {
  return std::erfc(z_abs / std::sqrt(2.0));
}

}  // namespace

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
  const std::size_t n1 = a.size(), n2 = b.size();

  double u_a = 0.0;
  bool ties_across = false;
  for (double x : a) {
    for (double y : b) {
      if (x > y) u_a += 1.0;
      else if (x == y) {
        u_a += 0.5;
        ties_across = true;
      }
    }
  }
  double u_b = static_cast<double>(n1) * static_cast<double>(n2) - u_a;

  // Any tie in the pooled data forces the approximate path.
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(pooled.begin(), pooled.end());
  bool any_tie = ties_across ||
                 std::adjacent_find(pooled.begin(), pooled.end()) != pooled.end();

  TestResult result;
  result.statistic = u_a;
  if (n1 + n2 <= 12 && !any_tie) {
    // Exact null distribution of U by DP: f[j][u] = number of arrangements of
    // the first items with j of them in group A and statistic u.
    const std::size_t max_u = n1 * n2;
    std::vector<std::vector<double>> f(n1 + 1, std::vector<double>(max_u + 1, 0.0));
    f[0][0] = 1.0;
    for (std::size_t item = 1; item <= n1 + n2; ++item) {
      for (std::size_t j = std::min(item, n1) + 1; j-- > 0;) {
        for (std::size_t u = max_u + 1; u-- > 0;) {
          // Assign the item (largest so far) to group A: it beats every group-B
          // item placed before it, i.e. (item-1) - (j-1) of them.
          double assigned_a = 0.0;
          if (j > 0) {
            std::size_t beats = item - j;
            if (u >= beats) assigned_a = f[j - 1][u - beats];
          }
          double assigned_b = (item - 1 >= j) ? f[j][u] : 0.0;
          f[j][u] = assigned_a + assigned_b;
        }
      }
    }
    double total = 0.0, tail = 0.0;
    double u_min = std::min(u_a, u_b);
    for (std::size_t u = 0; u <= max_u; ++u) {
      total += f[n1][u];
      if (static_cast<double>(u) <= u_min) tail += f[n1][u];
    }
    result.method = TestMethod::Exact;
    result.p_value = std::min(1.0, 2.0 * tail / total);
    return result;
  }

  const double n1d = static_cast<double>(n1), n2d = static_cast<double>(n2);
  const double n = n1d + n2d;
  const double mean = n1d * n2d / 2.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  double variance = n1d * n2d / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  result.method = TestMethod::NormalApprox;
  if (variance <= 0.0) {
    result.p_value = 1.0;  // everything tied
    return result;
  }
  double z = (std::abs(u_a - mean) - 0.5) / std::sqrt(variance);
  if (z < 0.0) z = 0.0;
  result.p_value = std::min(1.0, normal_sf_two_tailed(z));
  return result;
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("kendall_tau: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("kendall_tau: need at least 2 observations");

  // Knight's algorithm: sort by (x, y), count discordant pairs as inversions
  // in y, correct for ties in x, y, and both.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  auto pair_count = [](double t) { return t * (t - 1.0) / 2.0; };
  double ties_x = 0.0, ties_xy = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    ties_x += pair_count(static_cast<double>(j - i));
    for (std::size_t k = i; k < j;) {
      std::size_t m = k;
      while (m < j && y[order[m]] == y[order[k]]) ++m;
      ties_xy += pair_count(static_cast<double>(m - k));
      k = m;
    }
    i = j;
  }

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];

  // Merge sort counting swaps.
  std::vector<double> buf(n);
  std::uint64_t swaps = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      std::size_t mid = lo + width;
      std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (ys[j] < ys[i]) {
          swaps += mid - i;
          buf[k++] = ys[j++];
        } else {
          buf[k++] = ys[i++];
        }
      }
      while (i < mid) buf[k++] = ys[i++];
      while (j < hi) buf[k++] = ys[j++];
      std::copy(buf.begin() + lo, buf.begin() + hi, ys.begin() + lo);
    }
  }

  double ties_y = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && ys[j] == ys[i]) ++j;
    ties_y += pair_count(static_cast<double>(j - i));
    i = j;
  }

  const double n0 = pair_count(static_cast<double>(n));
  const double denom_x = n0 - ties_x;
  const double denom_y = n0 - ties_y;
  if (denom_x == 0.0 || denom_y == 0.0)
    throw std::invalid_argument("kendall_tau: an argument is entirely tied");
  double concordant_minus_discordant =
      n0 - ties_x - ties_y + ties_xy - 2.0 * static_cast<double>(swaps);
  return concordant_minus_discordant / std::sqrt(denom_x * denom_y);
}

namespace {

double interpolated_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.size() == 1) return sorted[0];
  double h = q * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

BootstrapCI bootstrap_ci(std::span<const double> values, int replicates, double level,
                         std::uint64_t seed) {
  if (values.empty()) throw std::invalid_argument("bootstrap_ci: empty sample");
  if (replicates < 1) throw std::invalid_argument("bootstrap_ci: replicates < 1");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("bootstrap_ci: bad level");

  const std::size_t n = values.size();
  BootstrapCI ci;
  ci.level = level;
  ci.replicates = replicates;
  ci.point = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);

  std::mt19937_64 gen(seed);
  std::vector<double> means(static_cast<std::size_t>(replicates));
  for (double& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += values[gen() % n];
    m = sum / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  double alpha = (1.0 - level) / 2.0;
  ci.lo = std::min(interpolated_quantile(means, alpha), ci.point);
  ci.hi = std::max(interpolated_quantile(means, 1.0 - alpha), ci.point);
  return ci;
}

GroupSplit group_split(std::span<const std::optional<double>> keys, double quantile) {
  if (!(quantile > 0.0 && quantile < 1.0))
    throw std::invalid_argument("group_split: quantile must be in (0,1)");
  std::vector<double> defined;
  defined.reserve(keys.size());
  for (const auto& k : keys)
    if (k) defined.push_back(*k);
  if (defined.size() < 2)
    throw std::invalid_argument("group_split: fewer than 2 defined keys");
  std::sort(defined.begin(), defined.end());

  GroupSplit split;
  split.threshold = interpolated_quantile(defined, quantile);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!keys[i]) {
      ++split.undefined_count;
    } else if (*keys[i] > split.threshold) {
      split.high.push_back(i);
    } else {
      split.low.push_back(i);
    }
  }
  return split;
}

std::vector<TeamSizeBucket> team_size_profile(
    std::span<const std::optional<double>> keys,
    std::span<const std::optional<std::int32_t>> team_sizes, int max_bucket,
    int replicates, double level, std::uint64_t seed) {
  if (keys.size() != team_sizes.size())
    throw std::invalid_argument("team_size_profile: parallel lists differ in length");
  if (max_bucket < 2) throw std::invalid_argument("team_size_profile: max_bucket < 2");

  std::vector<TeamSizeBucket> buckets(static_cast<std::size_t>(max_bucket));
  for (int b = 1; b <= max_bucket; ++b) {
    buckets[b - 1].team_size = b;
    buckets[b - 1].open_ended = b == max_bucket;
  }
  std::vector<std::vector<double>> members(static_cast<std::size_t>(max_bucket));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!team_sizes[i] || *team_sizes[i] < 1) continue;
    int b = std::min(*team_sizes[i], max_bucket);
    ++buckets[b - 1].count;
    if (keys[i]) {
      ++buckets[b - 1].defined_count;
      members[b - 1].push_back(*keys[i]);
    }
  }
  std::vector<TeamSizeBucket> out;
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    if (buckets[b].count == 0) continue;
    if (!members[b].empty())
      buckets[b].ci = bootstrap_ci(members[b], replicates, level, seed + b);
    out.push_back(std::move(buckets[b]));
  }
  return out;
}

}  // namespace citekit
