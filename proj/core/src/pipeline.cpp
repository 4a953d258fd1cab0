#include "citekit/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "citekit/bundle.hpp"
#include "citekit/evalstats.hpp"
#include "citekit/lingstats.hpp"
#include "citekit/version.hpp"

namespace citekit {

using nlohmann::json;

namespace {

const char* to_string(PercentileScope scope) {
  return scope == PercentileScope::Pooled ? "pooled" : "field";
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string canonical_config(const RunConfig& c) {
  std::ostringstream s;
  s << "denominator=" << to_string(c.denominator)
    << ";scope=" << to_string(c.percentile_scope)
    << ";quantile=" << format_double(c.quantile)
    << ";replicates=" << c.bootstrap_replicates << ";seed=" << c.seed
    << ";field=" << c.field_filter << ";all=" << c.all_papers
    << ";topk=" << c.top_k << ";by=" << c.split_by
    << ";format=" << (c.edge_format == EdgeFormat::Tsv ? "tsv" : "csv")
    << ";strict=" << c.strict_edges << ";freq=" << c.freq_tsv << ";match="
    << c.match.require_same_venue << c.match.require_same_year
    << c.match.require_same_volume << c.match.require_same_issue
    << c.match.require_same_field << "-cap"
    << (c.match.max_controls_per_target ? std::to_string(*c.match.max_controls_per_target)
                                        : std::string("none"))
    << "-uniq" << c.match.unique_assignment
    << ";synth=" << c.synth.n_papers << ","
    << (c.synth.model == testkit::SynthParams::EdgeModel::Density ? "density" : "pa") << ","
    << format_double(c.synth.edge_density) << "," << format_double(c.synth.mean_out_degree)
    << "," << format_double(c.synth.attachment_strength) << ","
    << format_double(c.synth.nobel_fraction) << "," << c.synth.year_min << ","
    << c.synth.year_max << "," << c.synth.venue_count << "," << c.synth.max_team_size
    << ";verify=" << c.verify_graphs << "," << c.verify_max_papers;
  return s.str();
}

json meta_json(const RunConfig& c) {
  return json{{"tool", "citekit"},
              {"version", version()},
              {"config_hash", config_hash(c)},
              {"seed", c.seed},
              {"denominator", to_string(c.denominator)}};
}

json test_json(const TestResult& t) {
  return json{{"statistic", t.statistic},
              {"p_value", t.p_value},
              {"method", t.method == TestMethod::Exact ? "exact" : "normal_approx"}};
}

json ci_json(const BootstrapCI& ci) {
  return json{{"point", ci.point}, {"lo", ci.lo},       {"hi", ci.hi},
              {"level", ci.level}, {"replicates", ci.replicates}};
}

bool require_file(const std::filesystem::path& path, const char* what) {
  if (std::filesystem::exists(path)) return true;
  std::cerr << "error: missing " << what << ": " << path.string() << "\n";
  return false;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);  // binary: keep LF on every platform
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_json_report(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

/// Applies a target/control pairs file to the graph labels. Returns false and
/// reports on failure.
bool apply_controls_overlay(CitationGraph& g, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open controls file: " << path.string() << "\n";
    return false;
  }
  try {
    auto [edges, stats] = parse_edges(in, EdgeFormat::Tsv, ParseMode::Strict);
    for (const Edge& pair : edges) {
      if (auto dense = g.dense_id(pair.cited)) {
        if (g.meta(*dense).label != Label::Nobel) g.set_label(*dense, Label::Control);
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "error: controls file: " << e.what() << "\n";
    return false;
  }
  return true;
}

/// load_bundle with exit-code mapping; returns nullopt after reporting.
std::optional<CitationGraph> load_graph(const RunConfig& config, int& exit_code) {
  auto bundle_path = config.resolved_bundle();
  if (!require_file(bundle_path, "graph bundle")) {
    exit_code = kExitMissingInput;
    return std::nullopt;
  }
  try {
    return load_bundle(bundle_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    exit_code = kExitSchemaError;
    return std::nullopt;
  }
}

struct MetricSpec {
  const char* key;
  std::optional<double> (*get)(const MetricFileRow&);
};

const std::array<MetricSpec, 6>& metric_specs() {
  static const std::array<MetricSpec, 6> specs{{
      {"c", [](const MetricFileRow& r) { return std::optional<double>(r.c); }},
      {"dc", [](const MetricFileRow& r) { return std::optional<double>(r.dc); }},
      {"cd_index", [](const MetricFileRow& r) { return r.cd_index; }},
      {"di_star", [](const MetricFileRow& r) { return r.di_star; }},
      {"simple_di", [](const MetricFileRow& r) { return r.simple_di; }},
      {"c_cd_p", [](const MetricFileRow& r) { return r.c_cd_p; }},
  }};
  return specs;
}

const MetricSpec* find_metric(std::string_view key) {
  for (const auto& spec : metric_specs())
    if (key == spec.key) return &spec;
  return nullptr;
}

int load_table_rows(const RunConfig& config, std::vector<MetricFileRow>& rows) {
  auto table_path = config.resolved_table();
  if (!require_file(table_path, "metric table")) return kExitMissingInput;
  std::ifstream in(table_path);
  try {
    rows = read_metric_table(in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << table_path.string() << ": " << e.what() << "\n";
    return kExitSchemaError;
  }
  if (!config.field_filter.empty()) {
    std::erase_if(rows, [&](const MetricFileRow& r) { return r.field_code != config.field_filter; });
  }
  if (rows.empty()) {
    std::cerr << "error: no sample papers\n";
    return kExitEmptySelection;
  }
  return kExitOk;
}

}  // namespace

std::filesystem::path RunConfig::resolved_bundle() const {
  return bundle_path.empty() ? output_dir / "graph.ckgb" : bundle_path;
}

std::filesystem::path RunConfig::resolved_table() const {
  return table_path.empty() ? output_dir / "metrics.tsv" : table_path;
}

int RunConfig::resolved_threads() const {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = fnv1a(canonical_config(config));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string report_provenance(const RunConfig& config) {
  return std::string("citekit ") + version() + " config=" + config_hash(config) +
         " seed=" + std::to_string(config.seed) +
         " denominator=" + to_string(config.denominator);
}

int run_ingest(const RunConfig& config) {
  if (!require_file(config.edges_path, "edges file")) return kExitMissingInput;
  if (!require_file(config.papers_path, "papers file")) return kExitMissingInput;
  std::filesystem::create_directories(config.output_dir);

  std::ifstream edges_in(config.edges_path);
  std::ifstream papers_in(config.papers_path);
  std::vector<Edge> edges;
  IngestStats edge_stats, paper_stats;
  std::vector<std::pair<ExternalId, PaperMeta>> papers;
  try {
    auto mode = config.strict_edges ? ParseMode::Strict : ParseMode::Lenient;
    std::tie(edges, edge_stats) = parse_edges(edges_in, config.edge_format, mode);
    std::tie(papers, paper_stats) = parse_papers(papers_in, ParseMode::Strict);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchemaError;
  }

  CitationGraph g;
  try {
    g = build_graph(edges, papers);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchemaError;
  }
  edge_stats.edges_kept = g.edge_count();
  edge_stats.duplicates_dropped = g.duplicate_edges_dropped();
  edge_stats.self_loops_dropped = g.self_loops_dropped();

  save_bundle(config.resolved_bundle(), g);
  json stats{
      {"meta", meta_json(config)},
      {"edges",
       {{"lines_read", edge_stats.lines_read},
        {"edges_kept", edge_stats.edges_kept},
        {"duplicates_dropped", edge_stats.duplicates_dropped},
        {"self_loops_dropped", edge_stats.self_loops_dropped},
        {"parse_failures", edge_stats.parse_failures}}},
      {"papers",
       {{"lines_read", paper_stats.lines_read},
        {"rows_kept", papers.size()},
        {"parse_failures", paper_stats.parse_failures}}},
      {"graph", {{"papers", g.paper_count()}, {"edges", g.edge_count()}}}};
  write_json_report(config.output_dir / "ingest_stats.json", stats);

  std::cerr << "ingest: " << g.paper_count() << " papers, " << g.edge_count()
            << " edges (" << edge_stats.duplicates_dropped << " duplicates, "
            << edge_stats.self_loops_dropped << " self-loops, "
            << edge_stats.parse_failures << " bad lines)\n";
  return kExitOk;
}

int run_metrics(const RunConfig& config) {
  int exit_code = kExitOk;
  auto maybe_graph = load_graph(config, exit_code);
  if (!maybe_graph) return exit_code;
  CitationGraph g = std::move(*maybe_graph);
  if (!config.controls_path.empty()) {
    if (!require_file(config.controls_path, "controls file")) return kExitMissingInput;
    if (!apply_controls_overlay(g, config.controls_path)) return kExitSchemaError;
  }

  std::vector<PaperId> sample;
  for (PaperId p = 0; p < g.paper_count(); ++p) {
    const PaperMeta& meta = g.meta(p);
    if (!config.all_papers && meta.label == Label::Other) continue;
    if (!config.field_filter.empty() && meta.field_code != config.field_filter) continue;
    sample.push_back(p);
  }
  if (sample.empty()) {
    std::cerr << "error: no sample papers\n";
    return kExitEmptySelection;
  }

  MetricTableOptions options;
  options.denominator = config.denominator;
  options.scope = config.percentile_scope;
  options.threads = config.resolved_threads();
  auto rows = compute_metric_table(g, sample, options);

  std::filesystem::create_directories(config.output_dir);
  std::ofstream out(config.resolved_table(), std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << config.resolved_table().string() << "\n";
    return kExitMissingInput;
  }
  write_metric_table(out, g, rows, report_provenance(config));
  std::cerr << "metrics: " << rows.size() << " rows -> "
            << config.resolved_table().string() << "\n";
  return kExitOk;
}

int run_match(const RunConfig& config) {
  int exit_code = kExitOk;
  auto maybe_graph = load_graph(config, exit_code);
  if (!maybe_graph) return exit_code;
  CitationGraph g = std::move(*maybe_graph);

  std::vector<PaperId> targets;
  for (PaperId p = 0; p < g.paper_count(); ++p)
    if (g.meta(p).label == Label::Nobel) targets.push_back(p);

  MatchResult result;
  try {
    result = match_controls(g, targets, config.match);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchemaError;
  }

  std::filesystem::create_directories(config.output_dir);
  std::ostringstream out;
  std::size_t pairs = 0;
  for (const auto& [target, controls] : result.matches) {
    for (PaperId control : controls) {
      out << g.external_id(target) << '\t' << g.external_id(control) << "\n";
      ++pairs;
    }
  }
  write_text_file(config.output_dir / "controls.tsv", out.str());
  for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << "\n";
  std::cerr << "match: " << pairs << " pairs for " << result.matches.size()
            << " targets (" << result.warnings.size() << " warnings)\n";
  return kExitOk;
}

namespace {

json evaluate_metric(const std::vector<MetricFileRow>& rows, const MetricSpec& spec) {
  std::vector<double> scores;
  std::vector<bool> positive;
  std::vector<double> nobel_values, control_values;
  for (const MetricFileRow& row : rows) {
    auto value = spec.get(row);
    if (!value) continue;
    scores.push_back(*value);
    positive.push_back(row.label == Label::Nobel);
    if (row.label == Label::Nobel) nobel_values.push_back(*value);
    else if (row.label == Label::Control) control_values.push_back(*value);
  }

  json block;
  block["n_defined"] = scores.size();
  bool any_positive = std::any_of(positive.begin(), positive.end(), [](bool b) { return b; });
  if (!scores.empty() && any_positive) {
    RankedSample sample{scores, positive};
    auto ip = identification_proportion(sample);
    auto cls = classification_curve(sample);
    block["ar"] = average_ranking(sample);
    block["ip_average"] = ip.average;
    block["ip_curve"] = json::array();
    for (double v : ip.curve) block["ip_curve"].push_back(v);
    block["avg_precision"] = cls.precision;
    block["avg_recall"] = cls.recall;
    block["avg_f1"] = cls.f1;
  } else {
    block["ar"] = nullptr;
    block["ip_average"] = nullptr;
    block["ip_curve"] = nullptr;
    block["avg_precision"] = nullptr;
    block["avg_recall"] = nullptr;
    block["avg_f1"] = nullptr;
  }
  if (!nobel_values.empty() && !control_values.empty()) {
    block["nobel_vs_control"] = test_json(mann_whitney_u(nobel_values, control_values));
  } else {
    block["nobel_vs_control"] = nullptr;
  }
  return block;
}

json tau_matrix(const std::vector<MetricFileRow>& rows) {
  json names = json::array();
  for (const auto& spec : metric_specs()) names.push_back(spec.key);
  json matrix = json::array();
  for (const auto& row_spec : metric_specs()) {
    json line = json::array();
    for (const auto& col_spec : metric_specs()) {
      std::vector<double> xs, ys;
      for (const MetricFileRow& row : rows) {
        auto x = row_spec.get(row);
        auto y = col_spec.get(row);
        if (x && y) {
          xs.push_back(*x);
          ys.push_back(*y);
        }
      }
      try {
        line.push_back(kendall_tau(xs, ys));
      } catch (const std::invalid_argument&) {
        line.push_back(nullptr);  // too few pairs or an all-tied metric
      }
    }
    matrix.push_back(std::move(line));
  }
  return json{{"metrics", names}, {"matrix", matrix}};
}

json team_size_block(const std::vector<MetricFileRow>& rows, const MetricSpec& spec,
                     const RunConfig& config) {
  std::vector<std::optional<double>> keys;
  std::vector<std::optional<std::int32_t>> team_sizes;
  for (const MetricFileRow& row : rows) {
    keys.push_back(spec.get(row));
    team_sizes.push_back(row.team_size);
  }
  json block;
  json buckets = json::array();
  for (const TeamSizeBucket& b :
       team_size_profile(keys, team_sizes, 10, config.bootstrap_replicates, 0.95, config.seed)) {
    json jb{{"team_size", b.team_size},
            {"open_ended", b.open_ended},
            {"count", b.count},
            {"defined_count", b.defined_count}};
    jb["ci"] = b.ci ? ci_json(*b.ci) : json(nullptr);
    buckets.push_back(std::move(jb));
  }
  block["buckets"] = buckets;

  // Team-size gap between high and low groups under this metric.
  block["high_low_team_size_test"] = nullptr;
  try {
    GroupSplit split = group_split(keys, config.quantile);
    std::vector<double> high_teams, low_teams;
    for (std::size_t i : split.high)
      if (team_sizes[i]) high_teams.push_back(static_cast<double>(*team_sizes[i]));
    for (std::size_t i : split.low)
      if (team_sizes[i]) low_teams.push_back(static_cast<double>(*team_sizes[i]));
    if (!high_teams.empty() && !low_teams.empty()) {
      block["high_low_team_size_test"] = test_json(mann_whitney_u(high_teams, low_teams));
      block["split_threshold"] = split.threshold;
    }
  } catch (const std::invalid_argument&) {
    // fewer than 2 defined keys; leave the test null
  }
  return block;
}

std::string type_name(Label label) {
  switch (label) {
    case Label::Nobel: return "Nobel";
    case Label::Control: return "Control";
    case Label::Other: return "Other";
  }
  return "Other";
}

std::string cd_2dp(const std::optional<double>& v) {
  if (!v) return {};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

}  // namespace

int run_eval(const RunConfig& config) {
  int exit_code = kExitOk;
  auto maybe_graph = load_graph(config, exit_code);
  if (!maybe_graph) return exit_code;
  CitationGraph g = std::move(*maybe_graph);

  std::vector<MetricFileRow> rows;
  if (int rc = load_table_rows(config, rows); rc != kExitOk) return rc;

  std::map<std::string, std::vector<MetricFileRow>> by_field;
  for (const MetricFileRow& row : rows) by_field[row.field_code].push_back(row);

  json report;
  report["meta"] = meta_json(config);
  report["notes"] = json::array(
      {"classification sweep runs k = 1..N; k = 0 is excluded (precision undefined)",
       "high/low splits use the configured quantile of defined metric values "
       "(default 0.5); adjust with --quantile"});
  json fields;
  for (const auto& [field, field_rows] : by_field) {
    json f;
    f["n"] = field_rows.size();
    f["n_nobel"] = std::count_if(field_rows.begin(), field_rows.end(),
                                 [](const auto& r) { return r.label == Label::Nobel; });
    f["n_control"] = std::count_if(field_rows.begin(), field_rows.end(),
                                   [](const auto& r) { return r.label == Label::Control; });
    json metrics;
    for (const auto& spec : metric_specs()) metrics[spec.key] = evaluate_metric(field_rows, spec);
    f["metrics"] = metrics;
    f["kendall_tau"] = tau_matrix(field_rows);
    f["team_size"] = json{{"dc", team_size_block(field_rows, *find_metric("dc"), config)},
                          {"cd_index", team_size_block(field_rows, *find_metric("cd_index"), config)}};
    fields[field.empty() ? "(none)" : field] = std::move(f);
  }
  report["fields"] = std::move(fields);

  std::filesystem::create_directories(config.output_dir);
  write_json_report(config.output_dir / "eval.json", report);

  // Table-2-style top-k by DC, per field.
  std::ostringstream top;
  top << "# " << report_provenance(config) << "\n";
  top << "Title\tYear\tJournal\tRef\tCit\tDC\tCD-index\tType\n";
  bool warned_missing = false;
  for (auto& [field, field_rows] : by_field) {
    std::sort(field_rows.begin(), field_rows.end(), [](const auto& a, const auto& b) {
      if (a.dc != b.dc) return a.dc > b.dc;
      return a.id < b.id;
    });
    std::size_t k = std::min<std::size_t>(field_rows.size(),
                                          static_cast<std::size_t>(std::max(config.top_k, 0)));
    for (std::size_t i = 0; i < k; ++i) {
      const MetricFileRow& row = field_rows[i];
      std::string title, journal;
      if (auto dense = g.dense_id(row.id)) {
        title = g.meta(*dense).title;
        journal = g.meta(*dense).venue_id;
      } else if (!warned_missing) {
        std::cerr << "warning: metric table ids not found in bundle (titles left blank)\n";
        warned_missing = true;
      }
      top << title << '\t' << (row.pub_year ? std::to_string(*row.pub_year) : std::string())
          << '\t' << journal << '\t' << row.reference_count << '\t' << row.c << '\t'
          << row.dc << '\t' << cd_2dp(row.cd_index) << '\t' << type_name(row.label) << "\n";
    }
  }
  write_text_file(config.output_dir / "topk.tsv", top.str());
  std::cerr << "eval: " << by_field.size() << " fields -> eval.json, topk.tsv\n";
  return kExitOk;
}

int run_ling(const RunConfig& config) {
  int exit_code = kExitOk;
  auto maybe_graph = load_graph(config, exit_code);
  if (!maybe_graph) return exit_code;
  CitationGraph g = std::move(*maybe_graph);

  std::vector<MetricFileRow> rows;
  if (int rc = load_table_rows(config, rows); rc != kExitOk) return rc;

  const MetricSpec* spec = find_metric(config.split_by);
  if (!spec) {
    std::cerr << "error: unknown split metric '" << config.split_by << "'\n";
    return kExitSchemaError;
  }
  if (config.lexicon_dir.empty() || !std::filesystem::exists(config.lexicon_dir)) {
    std::cerr << "error: missing lexicon directory: " << config.lexicon_dir.string() << "\n";
    return kExitMissingInput;
  }
  Lexicon lexicon;
  try {
    lexicon = load_lexicon(config.lexicon_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchemaError;
  }

  std::vector<std::optional<double>> keys;
  keys.reserve(rows.size());
  for (const MetricFileRow& row : rows) keys.push_back(spec->get(row));
  GroupSplit split;
  try {
    split = group_split(keys, config.quantile);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEmptySelection;
  }

  auto collect = [&](const std::vector<std::size_t>& members) {
    std::vector<PaperMeta> metas;
    for (std::size_t i : members) {
      if (auto dense = g.dense_id(rows[i].id)) metas.push_back(g.meta(*dense));
    }
    return metas;
  };
  std::vector<PaperMeta> high = collect(split.high);
  std::vector<PaperMeta> low = collect(split.low);
  if (high.empty() || low.empty()) {
    std::cerr << "error: empty group after split (threshold "
              << format_double(split.threshold) << ")\n";
    return kExitEmptySelection;
  }
  LinguisticReport ling = compare_groups_linguistic(high, low, lexicon);

  auto group_json = [](const GroupLinguistics& group) {
    json top_verbs = json::array(), top_nouns = json::array();
    for (const auto& [token, count] : group.top_verbs)
      top_verbs.push_back(json::array({token, count}));
    for (const auto& [token, count] : group.top_nouns)
      top_nouns.push_back(json::array({token, count}));
    return json{{"n", group.n_papers},
                {"nobel_count", group.nobel_count},
                {"mean_title_length", group.mean_title_length},
                {"total_tokens", group.frequencies.total_tokens},
                {"top_verbs", top_verbs},
                {"top_nouns", top_nouns}};
  };

  json report;
  report["meta"] = meta_json(config);
  report["split"] = json{{"by", config.split_by},
                         {"quantile", config.quantile},
                         {"threshold", split.threshold},
                         {"undefined_rows", split.undefined_count},
                         {"note", "split threshold is the configured quantile of defined "
                                  "metric values; adjust with --quantile"}};
  report["high"] = group_json(ling.high);
  report["low"] = group_json(ling.low);
  report["title_length_test"] = test_json(ling.title_length_test);

  std::filesystem::create_directories(config.output_dir);
  auto report_path = config.output_dir / ("ling_" + config.split_by + ".json");
  write_json_report(report_path, report);

  if (config.freq_tsv) {
    auto dump = [&](const GroupLinguistics& group, const std::string& name) {
      std::ostringstream out;
      out << "# " << report_provenance(config) << "\n";
      out << "token\tclass\tcount\n";
      auto emit = [&out](const std::unordered_map<std::string, std::uint64_t>& counts,
                         const char* cls) {
        std::vector<std::pair<std::string, std::uint64_t>> sorted(counts.begin(), counts.end());
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
          if (a.second != b.second) return a.second > b.second;
          return a.first < b.first;
        });
        for (const auto& [token, count] : sorted)
          out << token << '\t' << cls << '\t' << count << "\n";
      };
      emit(group.frequencies.verbs, "verb");
      emit(group.frequencies.nouns, "noun");
      emit(group.frequencies.other, "other");
      write_text_file(config.output_dir / ("ling_freq_" + config.split_by + "_" + name + ".tsv"),
                      out.str());
    };
    dump(ling.high, "high");
    dump(ling.low, "low");
  }
  std::cerr << "ling: split by " << config.split_by << " -> " << report_path.string() << "\n";
  return kExitOk;
}

namespace {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

void report_check(std::vector<VerifyCheck>& checks, std::string name, bool passed,
                  std::string detail) {
  std::cout << (passed ? "ok " : "FAIL ") << name << " (" << detail << ")\n";
  checks.push_back({std::move(name), passed, std::move(detail)});
}

}  // namespace

int run_verify(const RunConfig& config) {
  std::vector<VerifyCheck> checks;

  // Partition kernel vs literal set-construction oracle, both denominators.
  std::uint64_t nodes_checked = 0;
  bool partitions_ok = true;
  std::string failure;
  for (std::uint32_t i = 0; i < config.verify_graphs && partitions_ok; ++i) {
    testkit::SynthParams params;
    params.n_papers = 2 + (i * 37) % std::max<std::uint32_t>(config.verify_max_papers, 3);
    params.edge_density = 0.01 + 0.09 * static_cast<double>(i % 10) / 10.0;
    params.seed = config.seed + i;
    params.nobel_fraction = 0.1;
    auto corpus = testkit::synth_graph(params);
    CitationGraph g = build_graph(corpus.edges, corpus.papers);
    PartitionKernel kernel(g);
    for (PaperId p = 0; p < g.paper_count(); ++p) {
      CitationPartition fast = kernel(p);
      CitationPartition slow = testkit::oracle_partition(corpus.edges, g.external_id(p));
      bool same = fast == slow && fast.dc + fast.cc == fast.c && fast.cc <= fast.rc_total &&
                  cd_index(fast, DenominatorMode::Partition) ==
                      cd_index(slow, DenominatorMode::Partition) &&
                  cd_index(fast, DenominatorMode::Literal) ==
                      cd_index(slow, DenominatorMode::Literal) &&
                  di_star(fast) == di_star(slow) && simple_di(fast) == simple_di(slow);
      if (!same) {
        partitions_ok = false;
        failure = "graph seed " + std::to_string(params.seed) + " paper " +
                  std::to_string(g.external_id(p));
        break;
      }
      ++nodes_checked;
    }
  }
  report_check(checks, "partition-oracle", partitions_ok,
               partitions_ok ? std::to_string(config.verify_graphs) + " graphs, " +
                                   std::to_string(nodes_checked) + " nodes"
                             : failure);

  // Exact Mann-Whitney vs full enumeration.
  bool mwu_ok = true;
  std::mt19937_64 gen(config.seed ^ 0x9e3779b97f4a7c15ull);
  for (int trial = 0; trial < 40 && mwu_ok; ++trial) {
    std::size_t n1 = 2 + gen() % 4, n2 = 2 + gen() % 4;
    std::vector<double> pool(n1 + n2);
    std::iota(pool.begin(), pool.end(), 1.0);
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[gen() % i]);
    std::vector<double> a(pool.begin(), pool.begin() + n1);
    std::vector<double> b(pool.begin() + n1, pool.end());
    TestResult fast = mann_whitney_u(a, b);
    TestResult slow = testkit::oracle_mwu(a, b);
    if (fast.p_value != slow.p_value || fast.statistic != slow.statistic) mwu_ok = false;
  }
  report_check(checks, "mann-whitney-oracle", mwu_ok, "40 exact-path trials");

  // Kendall tau-b (merge sort) vs all-pairs enumeration, with ties.
  bool tau_ok = true;
  for (int trial = 0; trial < 40 && tau_ok; ++trial) {
    std::size_t n = 3 + gen() % 60;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(gen() % 8);
      y[i] = static_cast<double>(gen() % 8);
    }
    try {
      double fast = kendall_tau(x, y);
      double slow = testkit::oracle_tau(x, y);
      if (fast != slow) tau_ok = false;
    } catch (const std::invalid_argument&) {
      // all-tied draw; both sides reject it, try the next trial
    }
  }
  report_check(checks, "kendall-tau-oracle", tau_ok, "40 trials with ties");

  // Ranking battery vs fresh-sort oracle.
  bool topk_ok = true;
  for (int trial = 0; trial < 25 && topk_ok; ++trial) {
    std::size_t n = 5 + gen() % 80;
    RankedSample sample;
    sample.scores.resize(n);
    sample.is_positive.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      sample.scores[i] = static_cast<double>(gen() % 50);
      sample.is_positive[i] = gen() % 5 == 0;
    }
    sample.is_positive[gen() % n] = true;
    auto oracle = testkit::oracle_topk(sample);
    auto ip = identification_proportion(sample);
    auto cls = classification_curve(sample);
    double ar = average_ranking(sample);
    if (ip.average != oracle.ip.average || ip.curve != oracle.ip.curve ||
        cls.precision != oracle.classification.precision ||
        cls.recall != oracle.classification.recall || cls.f1 != oracle.classification.f1 ||
        ar != oracle.average_ranking)
      topk_ok = false;
  }
  report_check(checks, "topk-oracle", topk_ok, "25 ranked samples");

  bool all_ok = std::all_of(checks.begin(), checks.end(),
                            [](const VerifyCheck& c) { return c.passed; });
  std::cout << (all_ok ? "verify: all checks passed\n" : "verify: FAILURES\n");

  std::filesystem::create_directories(config.output_dir);
  json report;
  report["meta"] = meta_json(config);
  json items = json::array();
  for (const auto& check : checks)
    items.push_back(json{{"name", check.name}, {"passed", check.passed}, {"detail", check.detail}});
  report["checks"] = items;
  report["passed"] = all_ok;
  write_json_report(config.output_dir / "verify.json", report);
  return all_ok ? kExitOk : 1;
}

int run_synth(const RunConfig& config) {
  testkit::SynthParams params = config.synth;
  params.seed = config.seed;
  testkit::SynthCorpus corpus;
  try {
    corpus = testkit::synth_graph(params);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchemaError;
  }

  std::filesystem::create_directories(config.output_dir);
  {
    std::ofstream out(config.output_dir / "edges.tsv", std::ios::binary);
    out << "citing\tcited\n";
    for (const Edge& e : corpus.edges) out << e.citing << '\t' << e.cited << "\n";
    if (!out) {
      std::cerr << "error: write failed: edges.tsv\n";
      return kExitMissingInput;
    }
  }
  {
    std::ofstream out(config.output_dir / "papers.tsv", std::ios::binary);
    out << "id\tyear\tvenue_id\tvolume\tissue\tfield_code\tteam_size\tpage_length\tlabel\t"
           "title\tabstract\n";
    for (const auto& [id, meta] : corpus.papers) {
      out << id << '\t' << (meta.pub_year ? std::to_string(*meta.pub_year) : std::string())
          << '\t' << meta.venue_id << '\t' << meta.volume << '\t' << meta.issue << '\t'
          << meta.field_code << '\t'
          << (meta.team_size ? std::to_string(*meta.team_size) : std::string()) << '\t'
          << (meta.page_length ? std::to_string(*meta.page_length) : std::string()) << '\t'
          << to_string(meta.label) << '\t' << meta.title << '\t'
          << (meta.abstract ? *meta.abstract : std::string()) << "\n";
    }
    if (!out) {
      std::cerr << "error: write failed: papers.tsv\n";
      return kExitMissingInput;
    }
  }
  std::cerr << "synth: " << corpus.papers.size() << " papers, " << corpus.edges.size()
            << " edges -> edges.tsv, papers.tsv\n";
  return kExitOk;
}

}  // namespace citekit
