#include "testability/report/report.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "testability/dataset/csv.hpp"

namespace testability::report {
namespace fs = std::filesystem;
using dataset::format_number;

namespace {

[[noreturn]] void config_error(std::string_view key, std::string_view value, std::string_view why) {
  throw Error("ConfigError", fmt::format("{}={}: {}", key, value, why));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

template <typename T>
T parse_value(std::string_view key, std::string_view text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) config_error(key, text, "not a number");
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) config_error(key, text, "not finite");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  config_error(key, text, "expected true or false");
}

std::vector<fs::path> parse_paths(std::string_view text) {
  std::vector<fs::path> out;
  for (const auto& s : split_list(text)) out.emplace_back(s);
  return out;
}

std::string join_metrics(const std::vector<MetricId>& ids) {
  std::string out;
  for (MetricId id : ids) {
    if (!out.empty()) out += ',';
    out += metric_name(id);
  }
  return out;
}

std::string fixed4(double v) { return fmt::format("{:.4f}", v); }

std::string header_line(const std::string& hash) { return "# manifest " + hash + "\n"; }

template <typename Fn>
auto stage(int exit_code, Fn fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(exit_code, e.kind(), e.what());
  }
}

}  // namespace

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "seed") {
    c.seed = parse_value<std::uint64_t>(key, value);
  } else if (key == "dataset") {
    c.dataset = fs::path(value);
  } else if (key == "src") {
    c.source_dirs = parse_paths(value);
  } else if (key == "classes") {
    c.class_dirs = parse_paths(value);
  } else if (key == "pairs") {
    c.pairs = fs::path(value);
  } else if (key == "model") {
    c.model = fs::path(value);
  } else if (key == "out") {
    c.out = fs::path(value);
  } else if (key == "features") {
    c.features.clear();
    if (value == "all") return;
    for (const auto& name : split_list(value)) {
      const auto id = parse_metric(name);
      if (!id) config_error(key, value, "unknown metric " + name);
      c.features.push_back(*id);
    }
  } else if (key == "classifier" || key == "classifiers") {
    c.classifiers.clear();
    if (value == "all") {
      c.classifiers = {ml::ModelKind::DecisionTree, ml::ModelKind::RandomForest,
                       ml::ModelKind::MultilayerPerceptron};
      return;
    }
    for (const auto& name : split_list(value)) {
      const auto kind = ml::parse_model_kind(name);
      if (!kind) config_error(key, value, "unknown classifier " + name);
      c.classifiers.push_back(*kind);
    }
    if (c.classifiers.empty()) config_error(key, value, "no classifier named");
  } else if (key == "algorithms") {
    c.algorithms.clear();
    if (value == "all") {
      c.algorithms.assign(std::begin(ranking::kAllAlgorithms), std::end(ranking::kAllAlgorithms));
      return;
    }
    for (const auto& name : split_list(value)) {
      const auto a = ranking::parse_algorithm(name);
      if (!a) config_error(key, value, "unknown ranking algorithm " + name);
      c.algorithms.push_back(*a);
    }
  } else if (key == "k") {
    c.k = parse_value<int>(key, value);
    if (c.k < 2) config_error(key, value, "k must be at least 2");
  } else if (key == "threshold") {
    c.threshold = parse_value<double>(key, value);
  } else if (key == "population") {
    if (value == "raw") c.population = stats::Population::Raw;
    else if (value == "labeled") c.population = stats::Population::Labeled;
    else config_error(key, value, "expected raw or labeled");
  } else if (key == "thresholds") {
    const auto parts = split_list(value);
    if (parts.size() != 2) config_error(key, value, "expected q1,q3");
    c.thresholds = std::pair{parse_value<double>(key, parts[0]), parse_value<double>(key, parts[1])};
  } else if (key == "require_nbi") {
    c.require_nbi = parse_bool(key, value);
  } else if (key == "ignore_unknown_columns") {
    c.ignore_unknown_columns = parse_bool(key, value);
  } else if (key == "top") {
    c.top = parse_value<int>(key, value);
  } else if (key == "dt.min_leaf") {
    c.params.tree.min_leaf = parse_value<int>(key, value);
  } else if (key == "dt.max_depth") {
    c.params.tree.max_depth = parse_value<int>(key, value);
  } else if (key == "rf.trees") {
    c.params.forest.trees = parse_value<int>(key, value);
  } else if (key == "rf.features_per_split") {
    c.params.forest.features_per_split = parse_value<int>(key, value);
  } else if (key == "rf.min_leaf") {
    c.params.forest.min_leaf = parse_value<int>(key, value);
  } else if (key == "rf.max_depth") {
    c.params.forest.max_depth = parse_value<int>(key, value);
  } else if (key == "rf.bootstrap") {
    c.params.forest.bootstrap = parse_bool(key, value);
  } else if (key == "mlp.hidden") {
    c.params.mlp.hidden = parse_value<int>(key, value);
  } else if (key == "mlp.learning_rate") {
    c.params.mlp.learning_rate = parse_value<double>(key, value);
  } else if (key == "mlp.momentum") {
    c.params.mlp.momentum = parse_value<double>(key, value);
  } else if (key == "mlp.epochs") {
    c.params.mlp.epochs = parse_value<int>(key, value);
  } else {
    throw Error("ConfigError", "unknown setting '" + std::string(key) + "'");
  }
}

void apply_config_text(RunConfig& config, std::string_view text, const std::string& origin) {
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error("ConfigError", fmt::format("{}:{}: expected key=value", origin, line_no));
    }
    std::string_view key = line.substr(0, eq), value = line.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    try {
      apply_setting(config, key, value);
    } catch (const Error& e) {
      throw Error("ConfigError", fmt::format("{}:{}: {}", origin, line_no, e.what()));
    }
  }
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string Manifest::text() const {
  std::string out;
  for (const auto& [k, v] : entries) out += k + "=" + v + "\n";
  return out;
}

std::string Manifest::hash() const { return fmt::format("{:016x}", fnv1a64(text())); }

std::string correlations_csv(const stats::CorrelationReport& r, stats::Population population,
                             const std::string& hash) {
  std::string out = header_line(hash);
  out += fmt::format("# target {} population {} n {} threshold {}\n", metric_name(r.target),
                     stats::population_name(population), r.population, format_number(r.threshold));
  out += "metric,rho,above_threshold,skipped\n";
  for (const auto& e : r.full) {
    out += fmt::format("{},{},{},{}\n", metric_name(e.metric), e.rho ? format_number(*e.rho) : "",
                       e.rho && std::fabs(*e.rho) >= r.threshold ? 1 : 0,
                       dataset::csv_escape(e.skip_reason));
  }
  return out;
}

std::string correlations_md(const stats::CorrelationReport& r, stats::Population population,
                            const std::string& hash) {
  std::string out = fmt::format(
      "# Spearman correlation with {}\n\nManifest `{}`. Population: {} ({} records). "
      "Reported when |rho| >= {}.\n\n| Metric | Coefficient |\n|---|---|\n",
      metric_name(r.target), hash, stats::population_name(population), r.population,
      format_number(r.threshold));
  for (const auto& [id, rho] : r.entries) out += fmt::format("| {} | {} |\n", metric_name(id), fixed4(rho));
  if (r.entries.empty()) out += "| (none) | |\n";
  out += "\n## All metrics\n\n| Metric | Coefficient | Note |\n|---|---|---|\n";
  for (const auto& e : r.full) {
    out += fmt::format("| {} | {} | {} |\n", metric_name(e.metric), e.rho ? fixed4(*e.rho) : "-",
                       e.skip_reason);
  }
  return out;
}

std::string classification_csv(const std::vector<ml::EvalReport>& reports, const std::string& hash) {
  std::string out = header_line(hash);
  out += "# averaging weighted-by-class-support auc pooled-out-of-fold\n";
  out += "classifier,accuracy,precision,recall,f_measure,auc,tp,tn,fp,fn,folds,seed\n";
  for (const auto& r : reports) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", ml::model_kind_name(r.kind),
                       format_number(r.accuracy), format_number(r.precision),
                       format_number(r.recall), format_number(r.f_measure), format_number(r.auc),
                       r.confusion.tp, r.confusion.tn, r.confusion.fp, r.confusion.fn, r.folds, r.seed);
  }
  return out;
}

std::string classification_md(const std::vector<ml::EvalReport>& reports, const std::string& hash) {
  std::string out = fmt::format(
      "# Classification results\n\nManifest `{}`. Stratified {}-fold cross-validation, seed {}. "
      "Precision, recall and F-measure are per-class values weighted by class support; AUC is "
      "computed over pooled out-of-fold scores.\n\n"
      "| Classifier | Accuracy | Precision | Recall | F-Measure | AUC |\n|---|---|---|---|---|---|\n",
      hash, reports.empty() ? 0 : reports.front().folds, reports.empty() ? 0 : reports.front().seed);
  for (const auto& r : reports) {
    out += fmt::format("| {} | {} | {} | {} | {} | {} |\n", ml::model_kind_name(r.kind),
                       fixed4(r.accuracy), fixed4(r.precision), fixed4(r.recall),
                       fixed4(r.f_measure), fixed4(r.auc));
  }
  return out;
}

std::string ranking_csv(const std::vector<ranking::RankingTable>& tables, const std::string& hash) {
  std::string out = header_line(hash);
  out += "algorithm,rank,metric,score\n";
  for (const auto& t : tables) {
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      out += fmt::format("{},{},{},{}\n", ranking::algorithm_name(t.algorithm), i + 1,
                         metric_name(t.entries[i].first), format_number(t.entries[i].second));
    }
  }
  return out;
}

std::string ranking_md(const std::vector<ranking::RankingTable>& tables, int top,
                       const std::string& hash) {
  std::string out = fmt::format("# Feature ranking\n\nManifest `{}`. Top {} per algorithm.\n\n| Rank |", hash, top);
  for (const auto& t : tables) out += fmt::format(" {} |", ranking::algorithm_name(t.algorithm));
  out += "\n|---|";
  for (std::size_t i = 0; i < tables.size(); ++i) out += "---|";
  out += '\n';
  for (int rank = 0; rank < top; ++rank) {
    bool any = false;
    std::string row = fmt::format("| {} |", rank + 1);
    for (const auto& t : tables) {
      if (static_cast<std::size_t>(rank) < t.entries.size()) {
        any = true;
        row += fmt::format(" {} ({}) |", metric_name(t.entries[rank].first), fixed4(t.entries[rank].second));
      } else {
        row += " |";
      }
    }
    if (!any) break;
    out += row + '\n';
  }
  return out;
}

std::uint64_t require_seed(const RunConfig& config) {
  if (!config.seed) throw StageError(kInputError, "ConfigError", "a seed is required (--seed)");
  return *config.seed;
}

dataset::RawDataset load_dataset(const RunConfig& config) {
  if (!config.source_dirs.empty() && config.dataset) {
    throw StageError(kInputError, "ConfigError", "give either source directories or a dataset, not both");
  }
  if (!config.dataset) throw StageError(kInputError, "ConfigError", "a dataset is required (--dataset)");
  return stage(kInputError, [&] {
    dataset::IngestOptions opts;
    opts.require_nbi = config.require_nbi;
    opts.ignore_unknown_columns = config.ignore_unknown_columns;
    return dataset::ingest_file(*config.dataset, opts);
  });
}

dataset::LabeledDataset label(const RunConfig& config, const dataset::RawDataset& raw) {
  return stage(kLabelingDegenerate, [&] {
    dataset::LabeledDataset out =
        config.thresholds
            ? dataset::label_with_thresholds(raw.records, config.thresholds->first, config.thresholds->second)
            : dataset::label_by_quartiles(raw);
    // an override can empty a class just as surely as q1 = q3 can
    std::array<std::size_t, 2> n{};
    for (const auto& r : out.records) ++n[static_cast<std::size_t>(r.label)];
    if (n[0] == 0 || n[1] == 0) {
      throw DegenerateSplit(fmt::format("labeling left {} Effective and {} NonEffective records",
                                        n[static_cast<std::size_t>(EffectivenessLabel::Effective)],
                                        n[static_cast<std::size_t>(EffectivenessLabel::NonEffective)]));
    }
    return out;
  });
}

FeatureMatrix feature_matrix(const RunConfig& config, const dataset::RawDataset& raw,
                             const dataset::LabeledDataset& labeled) {
  std::vector<MetricId> features = config.features;
  if (features.empty()) {
    for (MetricId id : independent_metrics()) {
      const bool everywhere = std::all_of(raw.records.begin(), raw.records.end(),
                                          [&](const ClassRecord& r) { return r.metrics.has(id); });
      if (everywhere) features.push_back(id);
    }
  }
  return stage(kInputError, [&] { return dataset::to_feature_matrix(labeled, features); });
}

void describe_config(const RunConfig& c, Manifest& m) {
  m.add("tool", "testability 1.0");
  m.add("dataset", c.dataset ? c.dataset->generic_string() : "");
  m.add("seed", c.seed ? std::to_string(*c.seed) : "");
  m.add("quartiles", c.thresholds ? "override" : "linear-interpolation");
  m.add("population", std::string(stats::population_name(c.population)));
  m.add("correlation.threshold", format_number(c.threshold));
  m.add("require_nbi", c.require_nbi ? "1" : "0");
  m.add("k", std::to_string(c.k));
  std::string kinds;
  for (auto k : c.classifiers) kinds += (kinds.empty() ? "" : ",") + std::string(ml::model_kind_name(k));
  m.add("classifiers", kinds);
  const auto& p = c.params;
  m.add("dt.min_leaf", std::to_string(p.tree.min_leaf));
  m.add("dt.max_depth", std::to_string(p.tree.max_depth));
  m.add("rf.trees", std::to_string(p.forest.trees));
  m.add("rf.features_per_split", std::to_string(p.forest.features_per_split));
  m.add("rf.min_leaf", std::to_string(p.forest.min_leaf));
  m.add("rf.max_depth", std::to_string(p.forest.max_depth));
  m.add("rf.bootstrap", p.forest.bootstrap ? "1" : "0");
  m.add("mlp.hidden", std::to_string(p.mlp.hidden));
  m.add("mlp.learning_rate", format_number(p.mlp.learning_rate));
  m.add("mlp.momentum", format_number(p.mlp.momentum));
  m.add("mlp.epochs", std::to_string(p.mlp.epochs));
  std::string algos;
  for (auto a : c.algorithms) algos += (algos.empty() ? "" : ",") + std::string(ranking::algorithm_name(a));
  m.add("algorithms", algos);
  m.add("averaging", "weighted-by-class-support");
  m.add("auc", "pooled-out-of-fold");
}

void describe_data(const dataset::RawDataset& raw, const dataset::LabeledDataset& labeled,
                   Manifest& m) {
  std::size_t effective = 0;
  for (const auto& r : labeled.records) effective += r.label == EffectivenessLabel::Effective;
  m.add("ingested", std::to_string(raw.records.size()));
  m.add("q1", format_number(labeled.q1_threshold));
  m.add("q3", format_number(labeled.q3_threshold));
  m.add("labeled", std::to_string(labeled.records.size()));
  m.add("discarded", std::to_string(labeled.discarded_count));
  m.add("effective", std::to_string(effective));
  m.add("non_effective", std::to_string(labeled.records.size() - effective));
}

Bundle run_pipeline(const RunConfig& config) {
  const std::uint64_t seed = require_seed(config);
  const dataset::RawDataset raw = load_dataset(config);
  const dataset::LabeledDataset labeled = label(config, raw);
  const FeatureMatrix matrix = feature_matrix(config, raw, labeled);

  Manifest manifest;
  manifest.add("command", "pipeline");
  describe_config(config, manifest);
  describe_data(raw, labeled, manifest);
  manifest.add("features", join_metrics(matrix.feature_ids));
  const std::string hash = manifest.hash();

  std::vector<ClassRecord> labeled_records;
  if (config.population == stats::Population::Labeled) {
    for (const auto& r : labeled.records) labeled_records.push_back(r.record);
  }
  const std::vector<ClassRecord>& population =
      config.population == stats::Population::Raw ? raw.records : labeled_records;
  const auto correlations = stage(kInputError, [&] {
    return stats::correlation_table(population, MetricId::M, config.threshold, matrix.feature_ids);
  });

  std::vector<ml::EvalReport> evals;
  for (ml::ModelKind kind : config.classifiers) {
    ml::ClassifierConfig cc = config.params;
    cc.kind = kind;
    evals.push_back(stage(kTrainingFailure, [&] { return ml::evaluate(matrix, cc, config.k, seed); }));
  }

  std::vector<ranking::RankingTable> rankings;
  for (ranking::Algorithm a : config.algorithms) rankings.push_back(ranking::rank_features(matrix, a));

  Bundle bundle;
  bundle.emplace_back("correlations.csv", correlations_csv(correlations, config.population, hash));
  bundle.emplace_back("correlations.md", correlations_md(correlations, config.population, hash));
  bundle.emplace_back("classification.csv", classification_csv(evals, hash));
  bundle.emplace_back("classification.md", classification_md(evals, hash));
  bundle.emplace_back("ranking.csv", ranking_csv(rankings, hash));
  bundle.emplace_back("ranking.md", ranking_md(rankings, config.top, hash));
  bundle.emplace_back("run-manifest.txt", manifest.text() + "hash=" + hash + "\n");
  return bundle;
}

void write_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("IoError", "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error("IoError", "short write to " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

void write_bundle(const Bundle& bundle, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& [name, content] : bundle) write_atomic(dir / name, content);
}

}  // namespace testability::report
