// citekit: citation-graph disruption analytics pipeline.
//
// Subcommands: ingest, metrics, match, eval, ling, verify, synth. Stages
// communicate through files under --output, so runs are reproducible and easy
// to wire into batch jobs.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "citekit/pipeline.hpp"
#include "citekit/version.hpp"

namespace {

using citekit::RunConfig;

void add_global_options(CLI::App* cmd, RunConfig& config, std::string& denominator,
                        std::string& scope) {
  cmd->set_config("--config", "", "Read options from a key=value config file");
  cmd->add_option("--output", config.output_dir, "Output directory")
      ->default_str(".");
  cmd->add_option("--threads", config.threads, "Worker cap (0 = hardware)");
  cmd->add_option("--seed", config.seed, "Master RNG seed; embedded in reports");
  cmd->add_option("--denominator", denominator, "CD-index denominator: partition|literal")
      ->check(CLI::IsMember({"partition", "literal"}));
  cmd->add_option("--quantile", config.quantile, "High/low split quantile in (0,1)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--percentile-scope", scope, "Percentile pool: field|pooled")
      ->check(CLI::IsMember({"field", "pooled"}));
  cmd->add_option("--replicates", config.bootstrap_replicates, "Bootstrap replicates")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--field", config.field_filter, "Restrict analysis to one field code");
  cmd->add_option("--bundle", config.bundle_path, "Graph bundle path");
  cmd->add_option("--table", config.table_path, "Metric table path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"citation-graph disruption metrics toolkit"};
  app.set_version_flag("--version", std::string("citekit ") + citekit::version());
  app.set_config("--config", "", "Read options from a key=value config file");
  app.require_subcommand(1);

  RunConfig config;
  std::string denominator = "partition";
  std::string scope = "field";
  std::string model = "density";

  auto* ingest = app.add_subcommand("ingest", "Parse edge/paper files into a graph bundle");
  ingest->add_option("--edges", config.edges_path, "Edge list file")->required();
  ingest->add_option("--papers", config.papers_path, "Paper metadata TSV")->required();
  ingest->add_flag("--strict", config.strict_edges, "Abort on the first malformed edge line");
  std::string edge_format = "tsv";
  ingest->add_option("--edge-format", edge_format, "Edge separator: tsv|csv")
      ->check(CLI::IsMember({"tsv", "csv"}));

  auto* metrics = app.add_subcommand("metrics", "Compute the per-paper metric table");
  metrics->add_flag("--all", config.all_papers, "Whole corpus instead of nobel+control");
  metrics->add_option("--controls", config.controls_path,
                      "Target/control pairs file applied as label overlay");

  auto* match = app.add_subcommand("match", "Build the control group for nobel papers");
  bool no_venue = false, no_year = false, no_volume = false, no_issue = false, no_field = false;
  match->add_flag("--no-same-venue", no_venue, "Drop the same-venue requirement");
  match->add_flag("--no-same-year", no_year, "Drop the same-year requirement");
  match->add_flag("--no-same-volume", no_volume, "Drop the same-volume requirement");
  match->add_flag("--no-same-issue", no_issue, "Drop the same-issue requirement");
  match->add_flag("--no-same-field", no_field, "Drop the same-field requirement");
  std::uint32_t max_controls = 0;
  match->add_option("--max-controls", max_controls, "Cap controls per target (0 = unlimited)");
  match->add_flag("--unique", config.match.unique_assignment,
                  "Assign each control to at most one target");

  auto* eval = app.add_subcommand("eval", "Run the validation battery over a metric table");
  eval->add_option("--topk", config.top_k, "Rows per field in the top-k table")
      ->check(CLI::PositiveNumber);
  eval->add_option("--controls", config.controls_path,
                   "Target/control pairs file applied as label overlay");

  auto* ling = app.add_subcommand("ling", "Linguistic comparison of high/low split groups");
  ling->add_option("--lexicon", config.lexicon_dir, "Lexicon directory")->required();
  ling->add_option("--by", config.split_by,
                   "Split metric: c|dc|cd_index|di_star|simple_di|c_cd_p");
  ling->add_flag("--freq-tsv", config.freq_tsv, "Also dump per-group token frequencies");

  auto* verify = app.add_subcommand("verify", "Cross-check fast kernels against oracles");
  verify->add_option("--graphs", config.verify_graphs, "Number of random graphs");
  verify->add_option("--max-n", config.verify_max_papers, "Largest graph size");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--papers", config.synth.n_papers, "Paper count")->required();
  synth->add_option("--model", model, "Edge model: density|pa")
      ->check(CLI::IsMember({"density", "pa"}));
  synth->add_option("--density", config.synth.edge_density, "Density-model edge probability");
  synth->add_option("--mean-out-degree", config.synth.mean_out_degree,
                    "PA-model mean references per paper");
  synth->add_option("--pa-strength", config.synth.attachment_strength,
                    "PA-model degree-attachment probability");
  synth->add_option("--nobel-fraction", config.synth.nobel_fraction, "Nobel label fraction");
  synth->add_option("--venues", config.synth.venue_count, "Venue count");
  synth->add_option("--year-min", config.synth.year_min, "Earliest publication year");
  synth->add_option("--year-max", config.synth.year_max, "Latest publication year");

  for (auto* cmd : {ingest, metrics, match, eval, ling, verify, synth})
    add_global_options(cmd, config, denominator, scope);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return citekit::kExitSchemaError;
  }

  config.denominator = *citekit::parse_denominator_mode(denominator);
  config.percentile_scope = scope == "pooled" ? citekit::PercentileScope::Pooled
                                              : citekit::PercentileScope::WithinField;
  config.edge_format =
      edge_format == "csv" ? citekit::EdgeFormat::Csv : citekit::EdgeFormat::Tsv;
  config.match.require_same_venue = !no_venue;
  config.match.require_same_year = !no_year;
  config.match.require_same_volume = !no_volume;
  config.match.require_same_issue = !no_issue;
  config.match.require_same_field = !no_field;
  if (max_controls > 0) config.match.max_controls_per_target = max_controls;
  config.synth.model = model == "pa" ? citekit::testkit::SynthParams::EdgeModel::Preferential
                                     : citekit::testkit::SynthParams::EdgeModel::Density;

  try {
    if (ingest->parsed()) return citekit::run_ingest(config);
    if (metrics->parsed()) return citekit::run_metrics(config);
    if (match->parsed()) return citekit::run_match(config);
    if (eval->parsed()) return citekit::run_eval(config);
    if (ling->parsed()) return citekit::run_ling(config);
    if (verify->parsed()) return citekit::run_verify(config);
    if (synth->parsed()) return citekit::run_synth(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return citekit::kExitSchemaError;
  }
  return citekit::kExitSchemaError;
}
