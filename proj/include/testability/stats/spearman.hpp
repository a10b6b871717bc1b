#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "testability/core/record.hpp"

namespace testability::stats {

/// Rank 1 = smallest; ties share the mean of the positions they occupy.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson product-moment correlation. Throws LengthMismatch and
/// DegenerateInput (zero variance).
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson over average ranks; tie-safe. Needs >= 3 pairs and >= 2
/// distinct values per side.
double spearman(std::span<const double> x, std::span<const double> y);

enum class Population { Raw, Labeled };
std::string_view population_name(Population p) noexcept;

struct CorrelationEntry {
  MetricId metric;
  std::optional<double> rho;  // unset when skipped
  std::string skip_reason;
};

struct CorrelationReport {
  MetricId target = MetricId::M;
  double threshold = 0.5;
  std::size_t population = 0;
  std::vector<CorrelationEntry> full;                  // canonical metric order
  std::vector<std::pair<MetricId, double>> entries;    // |rho| >= threshold, |rho| descending
};

/// rho of every feature against `target` over `records`. A feature whose
/// column is absent or constant becomes a skipped entry rather than an error.
CorrelationReport correlation_table(std::span<const ClassRecord> records,
                                    MetricId target = MetricId::M, double threshold = 0.5,
                                    std::span<const MetricId> features = independent_metrics());

}  // namespace testability::stats
