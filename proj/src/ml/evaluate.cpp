#include "testability/ml/evaluate.hpp"

#include <algorithm>
#include <numeric>

#include "testability/core/errors.hpp"
#include "testability/core/parallel.hpp"
#include "testability/ml/rng.hpp"

namespace testability::ml {

std::vector<Fold> stratified_kfold(std::span<const EffectivenessLabel> targets, int k,
                                   std::uint64_t seed) {
  if (k < 2) throw Error("InvalidParameter", "k must be at least 2");
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    by_class[static_cast<std::size_t>(targets[i])].push_back(i);
  }
  for (std::size_t c = 0; c < 2; ++c) {
    if (by_class[c].size() < static_cast<std::size_t>(k)) {
      throw TooFewPerClass(std::string(label_name(static_cast<EffectivenessLabel>(c))) + " has " +
                           std::to_string(by_class[c].size()) + " rows, fewer than k=" +
                           std::to_string(k));
    }
  }
  Rng rng(seed);
  std::vector<int> fold_of(targets.size());
  std::size_t pos = 0;
  for (auto& members : by_class) {
    rng.shuffle(members);
    for (std::size_t row : members) fold_of[row] = static_cast<int>(pos++ % static_cast<std::size_t>(k));
  }
  std::vector<Fold> folds(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (int f = 0; f < k; ++f) {
      (fold_of[i] == f ? folds[static_cast<std::size_t>(f)].test
                       : folds[static_cast<std::size_t>(f)].train)
          .push_back(i);
    }
  }
  return folds;
}

double auc(std::span<const double> scores, std::span<const EffectivenessLabel> labels) {
  if (scores.size() != labels.size()) throw LengthMismatch("scores and labels differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
  std::uint64_t pos = 0, neg = 0;
  for (auto l : labels) (l == EffectivenessLabel::Effective ? pos : neg) += 1;
  if (pos == 0 || neg == 0) throw SingleClassInput("AUC needs both classes");

  // Walk thresholds from the top; each tie group moves the ROC point by
  // (dneg, dpos) and adds a trapezoid. Twice the area stays an integer.
  std::uint64_t tp = 0, twice_area = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::uint64_t dp = 0, dn = 0;
    std::size_t j = i;
    for (; j < order.size() && scores[order[j]] == scores[order[i]]; ++j) {
      (labels[order[j]] == EffectivenessLabel::Effective ? dp : dn) += 1;
    }
    twice_area += dn * (2 * tp + dp);
    tp += dp;
    i = j;
  }
  return static_cast<double>(twice_area) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

EvalReport summarize(std::span<const double> scores, std::span<const EffectivenessLabel> truth) {
  EvalReport r;
  r.scores.assign(scores.begin(), scores.end());
  std::array<std::array<double, 2>, 2> m{};  // m[actual][predicted]
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto p = scores[i] >= 0.5 ? EffectivenessLabel::Effective : EffectivenessLabel::NonEffective;
    r.predicted.push_back(p);
    m[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(p)] += 1;
  }
  r.confusion = {static_cast<std::size_t>(m[1][1]), static_cast<std::size_t>(m[0][0]),
                 static_cast<std::size_t>(m[0][1]), static_cast<std::size_t>(m[1][0])};
  const double n = static_cast<double>(scores.size());
  r.accuracy = (m[0][0] + m[1][1]) / n;
  for (std::size_t c = 0; c < 2; ++c) {
    const double support = m[c][0] + m[c][1];
    const double predicted = m[0][c] + m[1][c];
    const double p = predicted > 0 ? m[c][c] / predicted : 0.0;
    const double rec = support > 0 ? m[c][c] / support : 0.0;
    const double f = p + rec > 0 ? 2 * p * rec / (p + rec) : 0.0;
    r.precision += support / n * p;
    r.recall += support / n * rec;
    r.f_measure += support / n * f;
  }
  r.auc = auc(scores, truth);
  return r;
}

EvalReport evaluate(const FeatureMatrix& matrix, const ClassifierConfig& config, int k,
                    std::uint64_t seed) {
  check_feature_matrix(matrix);
  const auto folds = stratified_kfold(matrix.targets, k, seed);
  auto subset = [&](const std::vector<std::size_t>& idx) {
    FeatureMatrix sub;
    sub.feature_ids = matrix.feature_ids;
    for (std::size_t i : idx) {
      sub.rows.push_back(matrix.rows[i]);
      sub.targets.push_back(matrix.targets[i]);
    }
    return sub;
  };
  const auto fold_scores = parallel_for_index(folds.size(), [&](std::size_t f) {
    TrainedModel model;
    try {
      model = train(subset(folds[f].train), config, derive_seed(seed, 1 + f));
    } catch (const Error& e) {
      throw Error(e.kind(), "fold " + std::to_string(f + 1) + ": " + e.what());
    }
    std::vector<double> out;
    for (std::size_t i : folds[f].test) out.push_back(predict(model, matrix.rows[i]).score);
    return out;
  });
  std::vector<double> scores(matrix.row_count());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    for (std::size_t t = 0; t < folds[f].test.size(); ++t) scores[folds[f].test[t]] = fold_scores[f][t];
  }
  EvalReport r = summarize(scores, matrix.targets);
  r.kind = config.kind;
  r.folds = k;
  r.seed = seed;
  return r;
}

}  // namespace testability::ml
