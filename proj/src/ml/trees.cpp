#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "testability/core/errors.hpp"
#include "testability/core/parallel.hpp"
#include "testability/ml/model.hpp"
#include "testability/ml/rng.hpp"
#include "detail.hpp"

namespace testability::ml {
namespace {

constexpr double kMinGain = 1e-12;

double entropy2(double a, double b) {
  const double n = a + b;
  double h = 0.0;
  if (a > 0) h -= a / n * std::log2(a / n);
  if (b > 0) h -= b / n * std::log2(b / n);
  return h;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain_ratio = 0.0;
  double gain = 0.0;
  double split_info = 0.0;
};

// Positive-gain splits rank by gain ratio, then gain, then feature index.
// Zero-gain splits only matter when nothing else exists and rank by
// balance, so XOR-like interactions can still be reached one level down.
bool better(const Split& a, const std::optional<Split>& b) {
  if (!b) return true;
  const bool a_pos = a.gain > kMinGain, b_pos = b->gain > kMinGain;
  if (a_pos != b_pos) return a_pos;
  if (a_pos) {
    if (a.gain_ratio != b->gain_ratio) return a.gain_ratio > b->gain_ratio;
    if (a.gain != b->gain) return a.gain > b->gain;
  } else if (a.split_info != b->split_info) {
    return a.split_info > b->split_info;
  }
  return a.feature < b->feature;
}

std::optional<Split> best_split_on(const FeatureMatrix& m, int feature,
                                   const std::vector<std::size_t>& rows,
                                   const std::array<double, 2>& counts, int min_leaf) {
  std::vector<std::pair<double, int>> vals;
  vals.reserve(rows.size());
  for (std::size_t r : rows) {
    vals.emplace_back(m.rows[r][static_cast<std::size_t>(feature)], static_cast<int>(m.targets[r]));
  }
  std::sort(vals.begin(), vals.end());
  const double n = static_cast<double>(vals.size());
  const double h = entropy2(counts[0], counts[1]);
  std::array<double, 2> left{};
  std::optional<Split> best;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    left[static_cast<std::size_t>(vals[i].second)] += 1;
    if (vals[i].first == vals[i + 1].first) continue;
    const double nl = static_cast<double>(i + 1), nr = n - nl;
    if (nl < min_leaf || nr < min_leaf) continue;
    const double cond = nl / n * entropy2(left[0], left[1]) +
                        nr / n * entropy2(counts[0] - left[0], counts[1] - left[1]);
    Split s;
    s.feature = feature;
    s.threshold = vals[i].first;
    s.gain = std::max(0.0, h - cond);
    s.split_info = entropy2(nl, nr);
    s.gain_ratio = s.gain / s.split_info;
    if (better(s, best)) best = s;  // exact ties keep the earlier threshold
  }
  return best;
}

}  // namespace

const TreeNode& Tree::leaf_for(std::span<const double> row) const {
  const TreeNode* node = &nodes.front();
  while (!node->is_leaf()) {
    node = &nodes[static_cast<std::size_t>(
        row[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left : node->right)];
  }
  return *node;
}

double Tree::score(std::span<const double> row) const {
  const TreeNode& leaf = leaf_for(row);
  const double total = leaf.counts[0] + leaf.counts[1];
  return total > 0 ? leaf.counts[1] / total : 0.5;
}

int Tree::depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {  // children always follow parents
    deepest = std::max(deepest, depth[i]);
    if (!nodes[i].is_leaf()) {
      depth[static_cast<std::size_t>(nodes[i].left)] = depth[i] + 1;
      depth[static_cast<std::size_t>(nodes[i].right)] = depth[i] + 1;
    }
  }
  return deepest;
}

Tree grow_tree(const FeatureMatrix& matrix, std::span<const std::size_t> rows, int min_leaf,
               int max_depth, int features_per_split, std::uint64_t rng_seed) {
  const int d = static_cast<int>(matrix.feature_count());
  const bool subsample = features_per_split > 0 && features_per_split < d;
  Rng rng(rng_seed);
  min_leaf = std::max(1, min_leaf);

  struct Work {
    std::size_t node;
    std::vector<std::size_t> rows;
    int depth;
  };
  Tree tree;
  tree.nodes.emplace_back();
  std::vector<Work> stack;
  stack.push_back({0, {rows.begin(), rows.end()}, 0});
  std::vector<int> order(static_cast<std::size_t>(d));

  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    std::array<double, 2> counts{};
    for (std::size_t r : w.rows) counts[static_cast<std::size_t>(matrix.targets[r])] += 1;
    tree.nodes[w.node].counts = counts;

    if (counts[0] == 0 || counts[1] == 0) continue;
    if (max_depth > 0 && w.depth >= max_depth) continue;
    if (w.rows.size() < 2u * static_cast<std::size_t>(min_leaf)) continue;

    std::iota(order.begin(), order.end(), 0);
    std::optional<Split> best;
    if (subsample) {
      // A random subset first; keep drawing features only while nothing
      // with positive gain has turned up.
      rng.shuffle(order);
      for (int i = 0; i < d; ++i) {
        if (i >= features_per_split && best && best->gain > kMinGain) break;
        if (auto s = best_split_on(matrix, order[static_cast<std::size_t>(i)], w.rows, counts, min_leaf);
            s && better(*s, best)) {
          best = s;
        }
      }
    } else {
      for (int f = 0; f < d; ++f) {
        if (auto s = best_split_on(matrix, f, w.rows, counts, min_leaf); s && better(*s, best)) {
          best = s;
        }
      }
    }
    if (!best) continue;

    std::vector<std::size_t> left, right;
    for (std::size_t r : w.rows) {
      (matrix.rows[r][static_cast<std::size_t>(best->feature)] <= best->threshold ? left : right)
          .push_back(r);
    }
    const std::size_t l = tree.nodes.size();
    tree.nodes.emplace_back();
    tree.nodes.emplace_back();
    TreeNode& node = tree.nodes[w.node];
    node.feature = best->feature;
    node.threshold = best->threshold;
    node.left = static_cast<int>(l);
    node.right = static_cast<int>(l + 1);
    stack.push_back({l + 1, std::move(right), w.depth + 1});
    stack.push_back({l, std::move(left), w.depth + 1});
  }
  return tree;
}

void detail::require_two_classes(const FeatureMatrix& matrix) {
  check_feature_matrix(matrix);
  std::array<std::size_t, 2> n{};
  for (auto t : matrix.targets) ++n[static_cast<std::size_t>(t)];
  if (n[0] == 0 || n[1] == 0) {
    throw SingleClassInput("training data holds only " +
                           std::string(label_name(n[0] == 0 ? EffectivenessLabel::Effective
                                                            : EffectivenessLabel::NonEffective)) +
                           " rows");
  }
}

TrainedModel train_decision_tree(const FeatureMatrix& matrix, const TreeParams& params) {
  detail::require_two_classes(matrix);
  std::vector<std::size_t> rows(matrix.row_count());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  TrainedModel model;
  model.kind = ModelKind::DecisionTree;
  model.feature_ids = matrix.feature_ids;
  model.config.kind = ModelKind::DecisionTree;
  model.config.tree = params;
  model.trees.push_back(grow_tree(matrix, rows, params.min_leaf, params.max_depth, 0, 0));
  return model;
}

TrainedModel train_random_forest(const FeatureMatrix& matrix, const ForestParams& params,
                                 std::uint64_t seed) {
  detail::require_two_classes(matrix);
  if (params.trees < 1) throw Error("InvalidParameter", "a forest needs at least one tree");
  const std::size_t n = matrix.row_count();
  const int d = static_cast<int>(matrix.feature_count());
  const int fps = params.features_per_split > 0
                      ? std::min(params.features_per_split, d)
                      : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
  TrainedModel model;
  model.kind = ModelKind::RandomForest;
  model.feature_ids = matrix.feature_ids;
  model.seed = seed;
  model.config.kind = ModelKind::RandomForest;
  model.config.forest = params;
  model.trees = parallel_for_index(static_cast<std::size_t>(params.trees), [&](std::size_t t) {
    std::vector<std::size_t> rows(n);
    if (params.bootstrap) {
      Rng rng(derive_seed(seed, 2 * t));
      for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    return grow_tree(matrix, rows, params.min_leaf, params.max_depth, fps, derive_seed(seed, 2 * t + 1));
  });
  return model;
}

}  // namespace testability::ml
