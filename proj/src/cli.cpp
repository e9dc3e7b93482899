#include "dfp/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dfp/csv.hpp"
#include "dfp/errors.hpp"
#include "dfp/eval.hpp"
#include "dfp/extract.hpp"
#include "dfp/feature_eval.hpp"
#include "dfp/model_io.hpp"
#include "dfp/report.hpp"

namespace dfp::cli {

namespace {

namespace fs = std::filesystem;

// All outputs land via temp-file + rename so a failed run never leaves a
// half-written artifact behind.
void atomic_write(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + tmp.string());
    try {
      writer(out);
      out.flush();
      if (!out) throw DataError("write failure: " + tmp.string());
    } catch (...) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw;
    }
  }
  fs::rename(tmp, path);
}

std::ifstream open_input(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw DataError("cannot open input file: " + path);
  return in;
}

FeatureSchema resolve_schema(const std::string& name_or_path) {
  if (auto mode = schema_mode_from_string(name_or_path)) return canonical_schema(*mode);
  auto in = open_input(name_or_path);
  return load_schema_json(in);
}

Dataset load_dataset(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.position());
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DFP_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

struct ExtractArgs {
  std::vector<std::string> pcaps;
  std::string devices;
  std::string schema = "full24";
  std::string out;
  std::string diag;
  bool strict = false;
};

int run_extract(const ExtractArgs& args) {
  auto devices_in = open_input(args.devices);
  const DeviceMap devices = DeviceMap::from_csv(devices_in);
  const FeatureSchema schema = resolve_schema(args.schema);

  std::vector<fs::path> captures(args.pcaps.begin(), args.pcaps.end());
  ExtractReport report;
  const Dataset dataset =
      extract_dataset(captures, devices, schema, {.strict = args.strict}, &report);

  atomic_write(args.out, [&](std::ostream& out) { write_csv(dataset, out); });
  if (!args.diag.empty()) {
    atomic_write(args.diag, [&](std::ostream& out) { write_extract_report_json(report, out); });
  }
  print_extract_summary(report, std::cerr);
  std::cerr << "extract: wrote " << dataset.size() << " instance(s), "
            << dataset.classes().size() << " device(s) to " << args.out << '\n';
  return kExitOk;
}

struct RankArgs {
  std::string data;
  std::string out;
};

int run_rank(const RankArgs& args) {
  const Dataset dataset = load_dataset(args.data);
  const Ranking ranking = rank_features(dataset);
  atomic_write(args.out, [&](std::ostream& out) { write_ranking_csv(ranking, out); });
  std::cerr << "rank: scored " << ranking.scores.size() << " feature(s) over "
            << dataset.size() << " instance(s)\n";
  return kExitOk;
}

struct TrainArgs {
  std::string data;
  std::string classifier = "j48";
  std::uint64_t seed = 0;
  double split = 0.8;
  std::string model;
  std::string test_out;
  std::string ranking_path;
  int top_k = 0;
  bool no_prune = false;
  double confidence = 0.25;
  double min_leaf = 2.0;
  int max_depth = 0;
  bool stratified = false;
  int stale_limit = 5;
};

int run_train(const TrainArgs& args) {
  Dataset dataset = load_dataset(args.data);
  if (dataset.empty()) throw DataError(args.data + ": dataset has no instances");

  if (args.top_k > 0) {
    Ranking ranking;
    if (!args.ranking_path.empty()) {
      auto in = open_input(args.ranking_path);
      ranking = read_ranking_csv(in);
    } else {
      ranking = rank_features(dataset);
    }
    std::vector<FeatureDef> kept;
    for (const AttributeScore& score : ranking.scores) {
      if (static_cast<int>(kept.size()) >= args.top_k) break;
      auto idx = dataset.schema().index_of(score.feature);
      if (!idx) throw DataError("ranking feature not in dataset: '" + score.feature + "'");
      kept.push_back(dataset.schema().at(*idx));
    }
    dataset = project(dataset, FeatureSchema(std::move(kept)));
    std::cerr << "train: projected onto top-" << dataset.schema().size() << " features\n";
  }

  Dataset train_part = dataset;
  std::optional<Dataset> test_part;
  if (args.split < 1.0) {
    SplitSpec spec{args.split, args.seed, args.stratified};
    auto [train, test] = split_dataset(dataset, spec);
    train_part = std::move(train);
    test_part = std::move(test);
  }

  AnyModel model;
  if (args.classifier == "j48") {
    TreeParams params;
    params.min_leaf_weight = args.min_leaf;
    params.confidence = args.confidence;
    params.pruning = !args.no_prune;
    if (args.max_depth > 0) params.max_depth = args.max_depth;
    model = train_tree(train_part, params);
  } else if (args.classifier == "dtable") {
    model = train_decision_table(train_part, {.stale_limit = args.stale_limit});
  } else {
    throw DataError("unknown classifier: '" + args.classifier + "'");
  }

  atomic_write(args.model, [&](std::ostream& out) { save_model(model, out); });
  if (test_part && !args.test_out.empty()) {
    atomic_write(args.test_out, [&](std::ostream& out) { write_csv(*test_part, out); });
  }
  std::cerr << "train: " << args.classifier << " on " << train_part.size()
            << " instance(s), " << train_part.classes().size() << " class(es) -> "
            << args.model << '\n';
  return kExitOk;
}

struct EvaluateArgs {
  std::string model;
  std::string data;
  std::string report;
  std::string dataset_name;
};

int run_evaluate(const EvaluateArgs& args) {
  auto model_in = open_input(args.model);
  const AnyModel model = load_model(model_in);
  const Dataset dataset = load_dataset(args.data);

  std::string name = args.dataset_name;
  if (name.empty()) name = fs::path(args.data).stem().string();

  const Metrics metrics = evaluate(model, dataset, name);
  atomic_write(args.report, [&](std::ostream& out) { write_metrics_json(metrics, out); });

  std::ostringstream acc;
  acc.precision(4);
  acc << metrics.accuracy * 100.0;
  std::cerr << "evaluate: " << metrics.model_kind << " on " << metrics.instance_count
            << " instance(s): accuracy " << acc.str() << "%\n";
  return kExitOk;
}

struct ReportArgs {
  std::vector<std::string> metrics;
  std::string literature;
  std::string out;
};

int run_report(const ReportArgs& args) {
  std::vector<ReportRow> rows;
  {
    auto in = open_input(args.literature);
    rows = load_literature_csv(in);
  }
  for (const std::string& path : args.metrics) {
    auto in = open_input(path);
    const Metrics metrics = read_metrics_json(in);
    rows.push_back(measured_row(metrics, metrics.feature_count));
  }
  if (rows.empty()) throw DataError("report: nothing to write (no rows)");

  const std::string ext = fs::path(args.out).extension().string();
  if (ext == ".md") {
    atomic_write(args.out, [&](std::ostream& out) { out << comparison_markdown(rows); });
  } else if (ext == ".csv") {
    atomic_write(args.out, [&](std::ostream& out) { out << comparison_csv(rows); });
  } else {
    throw CLI::ValidationError("--out", "output must end in .md or .csv");
  }
  std::cerr << "report: wrote " << rows.size() << " row(s) to " << args.out << '\n';
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Single-packet device fingerprinting toolkit"};
  app.require_subcommand(1);

  ExtractArgs extract_args;
  auto* extract = app.add_subcommand(
      "extract", "Dissect pcap captures into a labeled fingerprint CSV");
  extract->add_option("--pcap", extract_args.pcaps, "Capture file(s), classic pcap")
      ->required()
      ->expected(-1);
  extract->add_option("--devices", extract_args.devices, "Device map CSV (mac,device)")
      ->required();
  extract->add_option("--schema", extract_args.schema,
                      "Built-in schema name (full24|reduced22) or schema JSON path");
  extract->add_option("--out", extract_args.out, "Output dataset CSV")->required();
  extract->add_option("--diag", extract_args.diag, "Write extraction diagnostics JSON here");
  extract->add_flag("--strict", extract_args.strict, "Fail the run on any unreadable capture");

  RankArgs rank_args;
  auto* rank = app.add_subcommand("rank", "Score features by gain ratio, descending");
  rank->add_option("--data", rank_args.data, "Dataset CSV")->required();
  rank->add_option("--out", rank_args.out, "Ranking CSV output")->required();

  TrainArgs train_args;
  train_args.seed = default_seed();
  auto* train = app.add_subcommand("train", "Fit a classifier on a seeded split");
  train->add_option("--data", train_args.data, "Dataset CSV")->required();
  train->add_option("--classifier", train_args.classifier, "j48 or dtable")
      ->check(CLI::IsMember({"j48", "dtable"}));
  train->add_option("--seed", train_args.seed, "Shuffle seed (default: $DFP_SEED or 0)");
  train->add_option("--split", train_args.split, "Training fraction; 1.0 trains on all rows")
      ->check(CLI::Range(0.0, 1.0));
  train->add_option("--model", train_args.model, "Model JSON output")->required();
  train->add_option("--test-out", train_args.test_out, "Write the held-out rows here");
  train->add_option("--top-k", train_args.top_k, "Keep only the k best-ranked features");
  train->add_option("--ranking", train_args.ranking_path,
                    "Ranking CSV to drive --top-k (default: computed in-process)");
  auto* no_prune = train->add_flag("--no-prune", train_args.no_prune, "Disable pruning (j48)");
  train->add_option("--confidence", train_args.confidence, "Pruning confidence (j48)")
      ->excludes(no_prune);
  train->add_option("--min-leaf", train_args.min_leaf, "Minimum leaf weight (j48)");
  train->add_option("--max-depth", train_args.max_depth, "Depth cap (j48)");
  train->add_flag("--stratified", train_args.stratified, "Stratify the split per class");
  train->add_option("--stale-limit", train_args.stale_limit,
                    "Best-first non-improving expansion budget (dtable)");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Score a saved model against a dataset");
  evaluate->add_option("--model", eval_args.model, "Model JSON")->required();
  evaluate->add_option("--data", eval_args.data, "Dataset CSV")->required();
  evaluate->add_option("--report", eval_args.report, "Metrics JSON output")->required();
  evaluate->add_option("--dataset-name", eval_args.dataset_name,
                       "Name used in reports (default: data file stem)");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Render the model-comparison table");
  report->add_option("--metrics", report_args.metrics, "Metrics JSON file(s)")->expected(-1);
  report->add_option("--literature", report_args.literature, "Literature constants CSV")
      ->required();
  report->add_option("--out", report_args.out, "Output table (.md or .csv)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 convention
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (extract->parsed()) return run_extract(extract_args);
    if (rank->parsed()) return run_rank(rank_args);
    if (train->parsed()) return run_train(train_args);
    if (evaluate->parsed()) return run_evaluate(eval_args);
    if (report->parsed()) return run_report(report_args);
    return kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace dfp::cli
