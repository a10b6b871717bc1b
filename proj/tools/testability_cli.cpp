// testability: metric extraction, labeling, statistics, classification and
// feature ranking over Java test/production class pairs.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "testability/dataset/csv.hpp"
#include "testability/java/extractor.hpp"
#include "testability/ml/model.hpp"
#include "testability/report/report.hpp"

namespace fs = std::filesystem;
using namespace testability;
using report::RunConfig;
using report::StageError;

namespace {

struct Flags {
  std::string config, seed, dataset, pairs, out, features, classifier, k, threshold, population,
      model, thresholds;
  std::vector<std::string> src, classes, settings;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key=value configuration file");
  cmd->add_option("--seed", f.seed, "master random seed");
  cmd->add_option("--dataset", f.dataset, "metrics dataset CSV");
  cmd->add_option("--src", f.src, "Java source directory (repeatable)");
  cmd->add_option("--classes", f.classes, "class-file directory or jar (repeatable)");
  cmd->add_option("--pairs", f.pairs, "pairing file: prod,test per line");
  cmd->add_option("--out", f.out, "output file or directory");
  cmd->add_option("--features", f.features, "comma-separated metric names or 'all'");
  cmd->add_option("--classifier", f.classifier, "DecisionTree, RandomForest, MultilayerPerceptron or 'all'");
  cmd->add_option("--k", f.k, "cross-validation folds");
  cmd->add_option("--threshold", f.threshold, "correlation reporting threshold");
  cmd->add_option("--population", f.population, "correlation population: raw or labeled");
  cmd->add_option("--thresholds", f.thresholds, "quartile override q1,q3");
  cmd->add_option("--model", f.model, "model file");
  cmd->add_option("--set", f.settings, "extra key=value setting (repeatable)");
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw StageError(report::kInputError, "InputError", "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig build_config(const Flags& f) {
  RunConfig c;
  try {
    if (!f.config.empty()) report::apply_config_text(c, read_text(f.config), f.config);
    auto set = [&](std::string_view key, const std::string& v) {
      if (!v.empty()) report::apply_setting(c, key, v);
    };
    auto join = [](const std::vector<std::string>& v) {
      std::string out;
      for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
      return out;
    };
    set("seed", f.seed);
    set("dataset", f.dataset);
    set("src", join(f.src));
    set("classes", join(f.classes));
    set("pairs", f.pairs);
    set("out", f.out);
    set("features", f.features);
    set("classifier", f.classifier);
    set("k", f.k);
    set("threshold", f.threshold);
    set("population", f.population);
    set("thresholds", f.thresholds);
    set("model", f.model);
    for (const auto& kv : f.settings) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error("ConfigError", "--set expects key=value, got " + kv);
      report::apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(report::kInputError, e.kind(), e.what());
  }
  return c;
}

int cmd_extract(const RunConfig& c) {
  if (c.source_dirs.empty()) throw StageError(report::kInputError, "ConfigError", "--src is required");
  if (c.dataset) throw StageError(report::kInputError, "ConfigError", "extract reads sources, not a dataset");
  std::vector<ClassRecord> records;
  try {
    java::ExtractOptions opts;
    opts.source_dirs = c.source_dirs;
    opts.class_dirs = c.class_dirs;
    opts.pairs_file = c.pairs;
    records = java::extract(opts);
  } catch (const Error& e) {
    throw StageError(report::kInputError, e.kind(), e.what());
  }
  std::vector<MetricId> columns;
  for (MetricId id : independent_metrics()) {
    if (id != MetricId::NBI || !c.class_dirs.empty()) columns.push_back(id);
  }
  fs::path out = c.out == "out" ? fs::path("metrics.csv") : c.out;
  if (fs::is_directory(out)) out /= "metrics.csv";
  report::write_atomic(out, dataset::write_records_csv(records, columns));
  fmt::print(stderr, "extracted {} classes to {}\n", records.size(), out.string());
  return 0;
}

int cmd_label(const RunConfig& c) {
  const auto raw = report::load_dataset(c);
  const auto labeled = report::label(c, raw);
  std::string csv = fmt::format("# q1 {} q3 {} discarded {}\n", dataset::format_number(labeled.q1_threshold),
                                dataset::format_number(labeled.q3_threshold), labeled.discarded_count);
  std::vector<ClassRecord> records;
  for (const auto& r : labeled.records) records.push_back(r.record);
  std::vector<MetricId> columns;
  for (MetricId id : all_metrics()) {
    if (std::all_of(records.begin(), records.end(), [&](const ClassRecord& r) { return r.metrics.has(id); })) {
      columns.push_back(id);
    }
  }
  const std::string body = dataset::write_records_csv(records, columns);
  // Append the label column to every line.
  std::istringstream lines(body);
  std::string line;
  std::size_t i = 0;
  while (std::getline(lines, line)) {
    csv += line + "," + (i == 0 ? std::string("label") : std::string(label_name(labeled.records[i - 1].label))) + "\n";
    ++i;
  }
  report::write_atomic(c.out / "labeled.csv", csv);
  fmt::print("ingested {} labeled {} discarded {} q1 {} q3 {}\n", raw.records.size(),
             labeled.records.size(), labeled.discarded_count,
             dataset::format_number(labeled.q1_threshold), dataset::format_number(labeled.q3_threshold));
  return 0;
}

int cmd_correlate(const RunConfig& c) {
  const auto raw = report::load_dataset(c);
  std::vector<ClassRecord> population;
  report::Manifest m;
  m.add("command", "correlate");
  report::describe_config(c, m);
  if (c.population == stats::Population::Labeled) {
    const auto labeled = report::label(c, raw);
    report::describe_data(raw, labeled, m);
    for (const auto& r : labeled.records) population.push_back(r.record);
  } else {
    m.add("ingested", std::to_string(raw.records.size()));
    population = raw.records;
  }
  std::vector<MetricId> features = c.features;
  if (features.empty()) {
    for (MetricId id : independent_metrics()) {
      if (id != MetricId::NBI || c.require_nbi) features.push_back(id);
    }
  }
  stats::CorrelationReport r;
  try {
    r = stats::correlation_table(population, MetricId::M, c.threshold, features);
  } catch (const Error& e) {
    throw StageError(report::kInputError, e.kind(), e.what());
  }
  const std::string hash = m.hash();
  report::write_bundle({{"correlations.csv", report::correlations_csv(r, c.population, hash)},
                        {"correlations.md", report::correlations_md(r, c.population, hash)}},
                       c.out);
  for (const auto& [id, rho] : r.entries) fmt::print("{} {}\n", metric_name(id), dataset::format_number(rho));
  return 0;
}

int cmd_train(const RunConfig& c) {
  const auto seed = report::require_seed(c);
  if (c.classifiers.size() != 1) {
    throw StageError(report::kInputError, "ConfigError", "train needs exactly one --classifier");
  }
  const auto raw = report::load_dataset(c);
  const auto labeled = report::label(c, raw);
  const auto matrix = report::feature_matrix(c, raw, labeled);
  ml::ClassifierConfig cc = c.params;
  cc.kind = c.classifiers.front();
  ml::TrainedModel model;
  try {
    model = ml::train(matrix, cc, seed);
  } catch (const Error& e) {
    throw StageError(report::kTrainingFailure, e.kind(), e.what());
  }
  const fs::path out = c.model ? *c.model : c.out / "model.txt";
  report::write_atomic(out, ml::serialize_model(model));
  fmt::print(stderr, "trained {} on {} rows x {} features -> {}\n", ml::model_kind_name(cc.kind),
             matrix.row_count(), matrix.feature_count(), out.string());
  return 0;
}

int cmd_evaluate(const RunConfig& c) {
  const auto seed = report::require_seed(c);
  const auto raw = report::load_dataset(c);
  const auto labeled = report::label(c, raw);
  const auto matrix = report::feature_matrix(c, raw, labeled);
  report::Manifest m;
  m.add("command", "evaluate");
  report::describe_config(c, m);
  report::describe_data(raw, labeled, m);
  std::vector<ml::EvalReport> evals;
  for (auto kind : c.classifiers) {
    ml::ClassifierConfig cc = c.params;
    cc.kind = kind;
    try {
      evals.push_back(ml::evaluate(matrix, cc, c.k, seed));
    } catch (const Error& e) {
      throw StageError(report::kTrainingFailure, e.kind(), e.what());
    }
  }
  const std::string hash = m.hash();
  report::write_bundle({{"classification.csv", report::classification_csv(evals, hash)},
                        {"classification.md", report::classification_md(evals, hash)}},
                       c.out);
  std::cout << report::classification_md(evals, hash);
  return 0;
}

int cmd_rank(const RunConfig& c) {
  const auto raw = report::load_dataset(c);
  const auto labeled = report::label(c, raw);
  const auto matrix = report::feature_matrix(c, raw, labeled);
  report::Manifest m;
  m.add("command", "rank");
  report::describe_config(c, m);
  report::describe_data(raw, labeled, m);
  std::vector<ranking::RankingTable> tables;
  for (auto a : c.algorithms) tables.push_back(ranking::rank_features(matrix, a));
  const std::string hash = m.hash();
  report::write_bundle({{"ranking.csv", report::ranking_csv(tables, hash)},
                        {"ranking.md", report::ranking_md(tables, c.top, hash)}},
                       c.out);
  std::cout << report::ranking_md(tables, c.top, hash);
  return 0;
}

int cmd_predict(const RunConfig& c) {
  if (!c.model) throw StageError(report::kInputError, "ConfigError", "--model is required");
  if (!c.dataset) throw StageError(report::kInputError, "ConfigError", "--dataset (metrics CSV) is required");
  ml::TrainedModel model;
  std::vector<ClassRecord> records;
  const std::string text = read_text(*c.dataset);
  try {
    model = ml::deserialize_model(read_text(*c.model));
  } catch (const Error& e) {
    throw StageError(report::kInputError, e.kind(), e.what());
  }
  std::vector<MetricId> present;
  try {
    present = dataset::header_metrics(text);
  } catch (const Error& e) {
    throw StageError(report::kInputError, e.kind(), e.what());
  }
  std::string missing;
  for (MetricId id : model.feature_ids) {
    if (std::find(present.begin(), present.end(), id) == present.end()) {
      missing += (missing.empty() ? "" : ", ") + std::string(metric_name(id));
    }
  }
  if (!missing.empty()) {
    throw StageError(report::kSchemaMismatch, "SchemaMismatch", "metrics CSV lacks model feature(s): " + missing);
  }
  try {
    records = dataset::read_records_csv(text, true);
  } catch (const Error& e) {
    throw StageError(report::kInputError, e.kind(), e.what());
  }
  std::string out = "class_id,score,label\n";
  std::array<std::size_t, 2> counts{};
  std::vector<double> row(model.feature_ids.size());
  for (const ClassRecord& r : records) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      const auto v = r.metrics.get(model.feature_ids[j]);
      if (!v) {
        throw StageError(report::kSchemaMismatch, "SchemaMismatch",
                         r.class_id + " has no value for " + std::string(metric_name(model.feature_ids[j])));
      }
      row[j] = *v;
    }
    const auto p = ml::predict(model, row);
    ++counts[static_cast<std::size_t>(p.label)];
    out += fmt::format("{},{},{}\n", dataset::csv_escape(r.class_id), dataset::format_number(p.score),
                       label_name(p.label));
  }
  const std::string summary = fmt::format("Effective {} NonEffective {}", counts[1], counts[0]);
  out += "# " + summary + "\n";
  fs::path dest = c.out == "out" ? fs::path("predictions.csv") : c.out;
  if (fs::is_directory(dest)) dest /= "predictions.csv";
  report::write_atomic(dest, out);
  fmt::print("{}\n", summary);
  return 0;
}

int cmd_pipeline(const RunConfig& c) {
  const auto bundle = report::run_pipeline(c);
  report::write_bundle(bundle, c.out);
  for (const auto& [name, content] : bundle) {
    if (name == "run-manifest.txt") std::cout << content;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static code and test metrics versus test effectiveness"};
  app.require_subcommand(1);
  Flags flags;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&);
  };
  const Command commands[] = {
      {"extract", "compute code and test-effort metrics from Java sources", cmd_extract},
      {"label", "label records by mutation-score quartiles", cmd_label},
      {"correlate", "Spearman correlation of every metric with M", cmd_correlate},
      {"train", "train one classifier and save the model", cmd_train},
      {"evaluate", "k-fold cross-validation of the classifiers", cmd_evaluate},
      {"rank", "rank features by GainRatio, InfoGain, SymmetricUncertainty and OneR", cmd_rank},
      {"predict", "score a metrics CSV with a saved model", cmd_predict},
      {"pipeline", "correlations, classification and ranking reports in one run", cmd_pipeline},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_flags(sub, flags);
    subs.emplace_back(sub, &cmd);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return report::kInputError;
  }
  try {
    const RunConfig config = build_config(flags);
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) return cmd->run(config);
    }
  } catch (const StageError& e) {
    fmt::print(stderr, "error: {}: {}\n", e.kind(), e.what());
    return e.exit_code();
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}: {}\n", e.kind(), e.what());
    return report::kInputError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return report::kInputError;
  }
  return report::kInputError;
}
