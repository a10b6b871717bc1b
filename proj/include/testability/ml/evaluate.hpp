#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "testability/ml/model.hpp"

namespace testability::ml {

struct Fold {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

/// Each class is shuffled under `seed`, the classes are concatenated and
/// row i of that sequence goes to fold i mod k. Throws TooFewPerClass when
/// a class has fewer than k rows.
std::vector<Fold> stratified_kfold(std::span<const EffectivenessLabel> targets, int k,
                                   std::uint64_t seed);

/// Trapezoidal ROC area; equals the probability that a random Effective
/// row outscores a random NonEffective one, ties counted half.
/// Throws SingleClassInput.
double auc(std::span<const double> scores, std::span<const EffectivenessLabel> labels);

struct Confusion {
  std::size_t tp = 0;  // Effective predicted Effective
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

struct EvalReport {
  ModelKind kind = ModelKind::DecisionTree;
  int folds = 0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  // Per-class values averaged with class-support weights.
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double auc = 0.0;  // over pooled out-of-fold scores
  Confusion confusion;
  std::vector<double> scores;  // out-of-fold score of every row
  std::vector<EffectivenessLabel> predicted;
};

/// Measures from pooled predictions.
EvalReport summarize(std::span<const double> scores, std::span<const EffectivenessLabel> truth);

/// k-fold cross-validation; folds train concurrently, each with a sub-seed
/// of `seed`. Training errors are rethrown with the fold index prefixed.
EvalReport evaluate(const FeatureMatrix& matrix, const ClassifierConfig& config, int k,
                    std::uint64_t seed);

}  // namespace testability::ml
