#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "testability/core/record.hpp"

namespace testability::ranking {

/// Bins are [-inf, c0), [c0, c1), ..., [c_last, inf): each cut is the
/// smallest value of the bin above it.
struct Discretization {
  std::vector<double> cut_points;  // strictly increasing

  std::size_t bin_count() const { return cut_points.size() + 1; }
  std::size_t bin_of(double value) const;
};

/// Recursive entropy-minimizing binary cuts with the MDL acceptance test.
Discretization mdl_discretize(std::span<const double> feature,
                              std::span<const EffectivenessLabel> labels);

/// Entropy in bits of a count vector.
double entropy(std::span<const double> counts);

/// Bin x class counts, row-major [bin][class].
std::vector<std::array<double, 2>> contingency(std::span<const double> feature,
                                               std::span<const EffectivenessLabel> labels,
                                               const Discretization& bins);

double info_gain(std::span<const double> feature, std::span<const EffectivenessLabel> labels,
                 const Discretization& bins);
double gain_ratio(std::span<const double> feature, std::span<const EffectivenessLabel> labels,
                  const Discretization& bins);
double symmetric_uncertainty(std::span<const double> feature,
                             std::span<const EffectivenessLabel> labels,
                             const Discretization& bins);

// The same three measures straight from a contingency table.
double info_gain(const std::vector<std::array<double, 2>>& table);
double gain_ratio(const std::vector<std::array<double, 2>>& table);
double symmetric_uncertainty(const std::vector<std::array<double, 2>>& table);

struct OneRBucket {
  std::size_t first = 0;  // positions in the (value, label)-sorted order
  std::size_t last = 0;   // inclusive
  std::array<double, 2> counts{};
};

/// Buckets of the single-attribute rule: each bucket grows until its
/// majority class has min_bucket rows, then extends while the class stays
/// the same and while the value stays the same.
std::vector<OneRBucket> oner_buckets(std::span<const double> feature,
                                     std::span<const EffectivenessLabel> labels,
                                     int min_bucket = 6);

/// Training accuracy of the rule: sum of bucket majorities over rows.
double oner_score(std::span<const double> feature, std::span<const EffectivenessLabel> labels,
                  int min_bucket = 6);

enum class Algorithm { GainRatio, InfoGain, SymmetricUncertainty, OneR };

std::string_view algorithm_name(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept;
inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::GainRatio, Algorithm::InfoGain,
                                               Algorithm::SymmetricUncertainty, Algorithm::OneR};

struct RankingTable {
  Algorithm algorithm = Algorithm::InfoGain;
  std::vector<std::pair<MetricId, double>> entries;  // score descending, then name
};

double score_feature(std::span<const double> feature, std::span<const EffectivenessLabel> labels,
                     Algorithm algorithm);

RankingTable rank_features(const FeatureMatrix& matrix, Algorithm algorithm);

}  // namespace testability::ranking
