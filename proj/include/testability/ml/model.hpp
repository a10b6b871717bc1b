#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "testability/core/record.hpp"

namespace testability::ml {

enum class ModelKind { DecisionTree, RandomForest, MultilayerPerceptron };

std::string_view model_kind_name(ModelKind kind) noexcept;
std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept;

/// Binary split node: rows with x[feature] <= threshold go left. Leaves
/// have feature -1 and keep the class counts that reached them.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::array<double, 2> counts{};  // NonEffective, Effective

  bool is_leaf() const { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at 0

  const TreeNode& leaf_for(std::span<const double> row) const;
  /// Fraction of Effective rows in the reached leaf.
  double score(std::span<const double> row) const;
  int depth() const;
};

struct TreeParams {
  int min_leaf = 2;
  int max_depth = 0;  // 0 = unbounded
};

struct ForestParams {
  int trees = 100;
  int features_per_split = 0;  // 0 = ceil(sqrt(d))
  int min_leaf = 1;
  int max_depth = 0;
  bool bootstrap = true;  // test hook: false trains every tree on all rows
};

struct MlpParams {
  int hidden = 0;  // 0 = ceil((d + 2) / 2)
  double learning_rate = 0.3;
  double momentum = 0.2;
  int epochs = 500;
};

/// One hidden sigmoid layer, two softmax outputs. Inputs are standardized
/// with the stored training mean and scale before the first layer.
/// `weights` layout: W1 (hidden x inputs, row-major), b1 (hidden),
/// W2 (2 x hidden), b2 (2).
struct Mlp {
  int inputs = 0;
  int hidden = 0;
  std::vector<double> mean;
  std::vector<double> scale;
  std::vector<double> weights;

  std::size_t weight_count() const {
    return static_cast<std::size_t>(hidden) * (inputs + 1) + 2u * (hidden + 1);
  }
  /// Probability of Effective.
  double score(std::span<const double> row) const;
};

struct ClassifierConfig {
  ModelKind kind = ModelKind::RandomForest;
  TreeParams tree;
  ForestParams forest;
  MlpParams mlp;
};

struct TrainedModel {
  ModelKind kind = ModelKind::DecisionTree;
  std::vector<MetricId> feature_ids;
  std::uint64_t seed = 0;
  ClassifierConfig config;
  std::vector<Tree> trees;  // one for DecisionTree
  std::optional<Mlp> mlp;
};

struct Prediction {
  EffectivenessLabel label;
  double score;
};

/// Throws SingleClassInput unless both classes are present with >= 2 rows.
TrainedModel train_decision_tree(const FeatureMatrix& matrix, const TreeParams& params = {});

TrainedModel train_random_forest(const FeatureMatrix& matrix, const ForestParams& params,
                                 std::uint64_t seed);

/// Throws NonFiniteLoss when an epoch's loss stops being finite.
TrainedModel train_mlp(const FeatureMatrix& matrix, const MlpParams& params, std::uint64_t seed);

TrainedModel train(const FeatureMatrix& matrix, const ClassifierConfig& config, std::uint64_t seed);

/// Label is Effective iff score >= 0.5. Throws DimensionMismatch.
Prediction predict(const TrainedModel& model, std::span<const double> row);

/// Grows one tree on the given row indices (duplicates allowed). With
/// features_per_split in (0, d) each split looks at a random feature subset
/// drawn from `rng_seed`; otherwise at every feature.
Tree grow_tree(const FeatureMatrix& matrix, std::span<const std::size_t> rows, int min_leaf,
               int max_depth, int features_per_split, std::uint64_t rng_seed);

// Mean cross-entropy of the network over `matrix` and its gradient with
// respect to Mlp::weights. Exposed for gradient checking.
double mlp_loss(const Mlp& net, const FeatureMatrix& matrix);
std::vector<double> mlp_gradient(const Mlp& net, const FeatureMatrix& matrix);

/// Fresh network for `matrix`: standardization fitted on it, weights
/// uniform in [-0.05, 0.05].
Mlp init_mlp(const FeatureMatrix& matrix, int hidden, std::uint64_t seed);

/// Self-describing text form; doubles round-trip exactly.
std::string serialize_model(const TrainedModel& model);
/// Throws ModelFormatError.
TrainedModel deserialize_model(std::string_view text);

}  // namespace testability::ml
