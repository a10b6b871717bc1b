#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "testability/core/errors.hpp"
#include "testability/dataset/dataset.hpp"
#include "testability/ml/evaluate.hpp"
#include "testability/ranking/ranking.hpp"
#include "testability/stats/spearman.hpp"

namespace testability::report {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kLabelingDegenerate = 3,
  kTrainingFailure = 4,
  kSchemaMismatch = 5,
};

/// An error tagged with the process exit code it maps to.
class StageError : public Error {
 public:
  StageError(int exit_code, const std::string& kind, const std::string& message)
      : Error(kind, message), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

struct RunConfig {
  std::vector<std::filesystem::path> source_dirs;
  std::vector<std::filesystem::path> class_dirs;
  std::optional<std::filesystem::path> dataset;
  std::optional<std::filesystem::path> pairs;
  std::optional<std::filesystem::path> model;
  std::filesystem::path out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::pair<double, double>> thresholds;  // q1, q3 override
  std::vector<MetricId> features;                       // empty = all available independents
  std::vector<ml::ModelKind> classifiers{ml::ModelKind::DecisionTree, ml::ModelKind::RandomForest,
                                         ml::ModelKind::MultilayerPerceptron};
  ml::ClassifierConfig params;
  std::vector<ranking::Algorithm> algorithms{std::begin(ranking::kAllAlgorithms),
                                             std::end(ranking::kAllAlgorithms)};
  int k = 10;
  stats::Population population = stats::Population::Raw;
  double threshold = 0.5;
  bool require_nbi = true;
  bool ignore_unknown_columns = false;
  int top = 10;  // rows in the Markdown ranking table
};

/// Sets one key (same names as the config file, e.g. "seed", "rf.trees").
/// Throws Error("ConfigError") on unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// key=value lines; '#' comments and blank lines ignored.
void apply_config_text(RunConfig& config, std::string_view text, const std::string& origin);

std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Reproducibility record: configuration echo plus data counts.
struct Manifest {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(std::string key, std::string value) { entries.emplace_back(std::move(key), std::move(value)); }
  std::string text() const;  // "key=value" lines
  std::string hash() const;  // 16 hex digits of fnv1a64(text())
};

using Bundle = std::vector<std::pair<std::string, std::string>>;  // file name, content

std::string correlations_csv(const stats::CorrelationReport& r, stats::Population population,
                             const std::string& hash);
std::string correlations_md(const stats::CorrelationReport& r, stats::Population population,
                            const std::string& hash);
std::string classification_csv(const std::vector<ml::EvalReport>& reports, const std::string& hash);
std::string classification_md(const std::vector<ml::EvalReport>& reports, const std::string& hash);
std::string ranking_csv(const std::vector<ranking::RankingTable>& tables, const std::string& hash);
std::string ranking_md(const std::vector<ranking::RankingTable>& tables, int top,
                       const std::string& hash);

// Stages shared by the CLI commands. Each throws StageError carrying
// the matching exit code.
dataset::RawDataset load_dataset(const RunConfig& config);
dataset::LabeledDataset label(const RunConfig& config, const dataset::RawDataset& raw);
FeatureMatrix feature_matrix(const RunConfig& config, const dataset::RawDataset& raw,
                             const dataset::LabeledDataset& labeled);
std::uint64_t require_seed(const RunConfig& config);

void describe_config(const RunConfig& config, Manifest& manifest);
void describe_data(const dataset::RawDataset& raw, const dataset::LabeledDataset& labeled,
                   Manifest& manifest);

/// Correlations, classification and ranking reports plus run-manifest.txt.
Bundle run_pipeline(const RunConfig& config);

/// Writes through a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// All files of a bundle, each atomically, into `dir` (created if needed).
void write_bundle(const Bundle& bundle, const std::filesystem::path& dir);

}  // namespace testability::report
