#include "testability/ranking/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "testability/core/errors.hpp"
#include "testability/core/parallel.hpp"

namespace testability::ranking {
namespace {

using Counts = std::array<double, 2>;

double h2(const Counts& c) { return entropy(c); }

void check_lengths(std::span<const double> feature, std::span<const EffectivenessLabel> labels) {
  if (feature.size() != labels.size()) {
    throw LengthMismatch("feature has " + std::to_string(feature.size()) + " values, labels " +
                         std::to_string(labels.size()));
  }
}

std::vector<std::pair<double, int>> sorted_pairs(std::span<const double> feature,
                                                 std::span<const EffectivenessLabel> labels) {
  std::vector<std::pair<double, int>> v;
  v.reserve(feature.size());
  for (std::size_t i = 0; i < feature.size(); ++i) v.emplace_back(feature[i], static_cast<int>(labels[i]));
  std::sort(v.begin(), v.end());
  return v;
}

int classes_present(const Counts& c) { return (c[0] > 0) + (c[1] > 0); }

// Fayyad-Irani recursion over sorted[lo, hi).
void mdl_split(const std::vector<std::pair<double, int>>& sorted, std::size_t lo, std::size_t hi,
               std::vector<double>& cuts) {
  const std::size_t n = hi - lo;
  if (n < 2) return;
  Counts total{};
  for (std::size_t i = lo; i < hi; ++i) total[static_cast<std::size_t>(sorted[i].second)] += 1;
  const double h = h2(total);
  if (h == 0.0) return;

  const double N = static_cast<double>(n);
  Counts left{};
  std::optional<std::size_t> best;
  double best_cond = 0.0;
  Counts best_left{};
  for (std::size_t i = lo; i + 1 < hi; ++i) {
    left[static_cast<std::size_t>(sorted[i].second)] += 1;
    if (sorted[i].first == sorted[i + 1].first) continue;
    const double nl = static_cast<double>(i + 1 - lo);
    const Counts right{total[0] - left[0], total[1] - left[1]};
    const double cond = nl / N * h2(left) + (N - nl) / N * h2(right);
    if (!best || cond < best_cond) {
      best = i + 1;
      best_cond = cond;
      best_left = left;
    }
  }
  if (!best) return;
  const Counts best_right{total[0] - best_left[0], total[1] - best_left[1]};
  const double gain = h - best_cond;
  const double k = classes_present(total), k1 = classes_present(best_left),
               k2 = classes_present(best_right);
  const double delta = std::log2(std::pow(3.0, k) - 2.0) -
                       (k * h - k1 * h2(best_left) - k2 * h2(best_right));
  if (gain <= (std::log2(N - 1.0) + delta) / N) return;

  mdl_split(sorted, lo, *best, cuts);
  cuts.push_back(sorted[*best].first);
  mdl_split(sorted, *best, hi, cuts);
}

struct Entropies {
  double h_class, h_bins, h_joint;
};

Entropies entropies(const std::vector<Counts>& table) {
  Counts cls{};
  std::vector<double> bins, joint;
  for (const Counts& row : table) {
    cls[0] += row[0];
    cls[1] += row[1];
    bins.push_back(row[0] + row[1]);
    joint.push_back(row[0]);
    joint.push_back(row[1]);
  }
  return {entropy(cls), entropy(bins), entropy(joint)};
}

}  // namespace

std::size_t Discretization::bin_of(double value) const {
  return static_cast<std::size_t>(std::upper_bound(cut_points.begin(), cut_points.end(), value) -
                                  cut_points.begin());
}

double entropy(std::span<const double> counts) {
  const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (n <= 0) return 0.0;
  double h = 0.0;
  for (double c : counts) {
    if (c > 0) h -= c / n * std::log2(c / n);
  }
  return h;
}

Discretization mdl_discretize(std::span<const double> feature,
                              std::span<const EffectivenessLabel> labels) {
  check_lengths(feature, labels);
  Discretization d;
  mdl_split(sorted_pairs(feature, labels), 0, feature.size(), d.cut_points);
  return d;
}

std::vector<Counts> contingency(std::span<const double> feature,
                                std::span<const EffectivenessLabel> labels,
                                const Discretization& bins) {
  check_lengths(feature, labels);
  std::vector<Counts> table(bins.bin_count());
  for (std::size_t i = 0; i < feature.size(); ++i) {
    table[bins.bin_of(feature[i])][static_cast<std::size_t>(labels[i])] += 1;
  }
  return table;
}

// IG = H(C) + H(B) - H(B, C), which equals H(C) - H(C | B).
double info_gain(const std::vector<Counts>& table) {
  const Entropies e = entropies(table);
  return std::max(0.0, e.h_class + e.h_bins - e.h_joint);
}

double gain_ratio(const std::vector<Counts>& table) {
  const Entropies e = entropies(table);
  if (e.h_bins == 0.0) return 0.0;
  return std::max(0.0, e.h_class + e.h_bins - e.h_joint) / e.h_bins;
}

double symmetric_uncertainty(const std::vector<Counts>& table) {
  const Entropies e = entropies(table);
  const double denom = e.h_class + e.h_bins;
  if (denom == 0.0) return 0.0;
  return std::clamp(2.0 * (e.h_class + e.h_bins - e.h_joint) / denom, 0.0, 1.0);
}

double info_gain(std::span<const double> feature, std::span<const EffectivenessLabel> labels,
                 const Discretization& bins) {
  return info_gain(contingency(feature, labels, bins));
}

double gain_ratio(std::span<const double> feature, std::span<const EffectivenessLabel> labels,
                  const Discretization& bins) {
  return gain_ratio(contingency(feature, labels, bins));
}

double symmetric_uncertainty(std::span<const double> feature,
                             std::span<const EffectivenessLabel> labels,
                             const Discretization& bins) {
  return symmetric_uncertainty(contingency(feature, labels, bins));
}

std::vector<OneRBucket> oner_buckets(std::span<const double> feature,
                                     std::span<const EffectivenessLabel> labels, int min_bucket) {
  check_lengths(feature, labels);
  const auto sorted = sorted_pairs(feature, labels);
  const std::size_t n = sorted.size();
  std::vector<OneRBucket> buckets;
  std::size_t it = 0;
  while (it < n) {
    OneRBucket b;
    b.first = it;
    std::size_t majority = 0;
    auto take = [&] {
      const auto c = static_cast<std::size_t>(sorted[it].second);
      b.counts[c] += 1;
      if (b.counts[c] > b.counts[majority]) majority = c;
      ++it;
    };
    do {
      take();
    } while (it < n && b.counts[majority] < min_bucket);
    while (it < n && static_cast<std::size_t>(sorted[it].second) == majority) take();
    while (it < n && sorted[it - 1].first == sorted[it].first) take();
    b.last = it - 1;
    buckets.push_back(b);
  }
  return buckets;
}

double oner_score(std::span<const double> feature, std::span<const EffectivenessLabel> labels,
                  int min_bucket) {
  if (feature.empty()) return 0.0;
  double correct = 0.0;
  for (const OneRBucket& b : oner_buckets(feature, labels, min_bucket)) {
    correct += std::max(b.counts[0], b.counts[1]);
  }
  return correct / static_cast<double>(feature.size());
}

std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::GainRatio: return "GainRatio";
    case Algorithm::InfoGain: return "InfoGain";
    case Algorithm::SymmetricUncertainty: return "SymmetricUncertainty";
    case Algorithm::OneR: return "OneR";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept {
  for (Algorithm a : kAllAlgorithms) {
    if (text == algorithm_name(a)) return a;
  }
  if (text == "gr") return Algorithm::GainRatio;
  if (text == "ig") return Algorithm::InfoGain;
  if (text == "su") return Algorithm::SymmetricUncertainty;
  if (text == "oner") return Algorithm::OneR;
  return std::nullopt;
}

double score_feature(std::span<const double> feature, std::span<const EffectivenessLabel> labels,
                     Algorithm algorithm) {
  if (algorithm == Algorithm::OneR) return oner_score(feature, labels);
  const auto table = contingency(feature, labels, mdl_discretize(feature, labels));
  switch (algorithm) {
    case Algorithm::GainRatio: return gain_ratio(table);
    case Algorithm::InfoGain: return info_gain(table);
    default: return symmetric_uncertainty(table);
  }
}

RankingTable rank_features(const FeatureMatrix& matrix, Algorithm algorithm) {
  check_feature_matrix(matrix);
  RankingTable table;
  table.algorithm = algorithm;
  const auto scores = parallel_for_index(matrix.feature_count(), [&](std::size_t j) {
    return score_feature(matrix.column(j), matrix.targets, algorithm);
  });
  for (std::size_t j = 0; j < scores.size(); ++j) table.entries.emplace_back(matrix.feature_ids[j], scores[j]);
  std::sort(table.entries.begin(), table.entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return metric_name(a.first) < metric_name(b.first);
  });
  return table;
}

}  // namespace testability::ranking
