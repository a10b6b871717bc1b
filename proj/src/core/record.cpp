#include "testability/core/record.hpp"

#include <cmath>
#include <fmt/format.h>

#include "testability/core/errors.hpp"

namespace testability {

double MetricValues::at(MetricId id) const {
  if (!has(id)) {
    throw MissingColumn(std::string("metric ") +
                        std::string(metric_name(id)) + " is absent");
  }
  return values_[index_of(id)];
}

std::string_view label_name(EffectivenessLabel label) noexcept {
  return label == EffectivenessLabel::Effective ? "Effective" : "NonEffective";
}

std::optional<EffectivenessLabel> parse_label(std::string_view text) noexcept {
  if (text == "Effective") return EffectivenessLabel::Effective;
  if (text == "NonEffective") return EffectivenessLabel::NonEffective;
  return std::nullopt;
}

std::vector<Violation> validate_record(const ClassRecord& record) {
  std::vector<Violation> out;
  for (MetricId id : all_metrics()) {
    const auto value = record.metrics.get(id);
    if (!value) continue;
    const std::string name(metric_name(id));
    const double v = *value;
    if (!std::isfinite(v)) {
      out.push_back({id, name + " is not finite"});
      continue;
    }
    switch (value_domain(id)) {
      case ValueDomain::Count:
        if (v < 0.0) out.push_back({id, name + " is negative"});
        if (v != std::floor(v)) out.push_back({id, name + " is not an integer"});
        break;
      case ValueDomain::UnitRatio:
        if (v < 0.0 || v > 1.0) out.push_back({id, name + " out of [0,1]"});
        break;
      case ValueDomain::Lcom3Range:
        if (v < 0.0 || v > 2.0) out.push_back({id, name + " out of [0,2]"});
        break;
      case ValueDomain::NonNegative:
        if (v < 0.0) out.push_back({id, name + " is negative"});
        break;
    }
  }
  const auto nmc = record.metrics.get(MetricId::NMC);
  const auto nmci = record.metrics.get(MetricId::NMCI);
  const auto nmce = record.metrics.get(MetricId::NMCE);
  if (nmc && nmci && nmce && *nmc != *nmci + *nmce) {
    out.push_back({std::nullopt,
                   fmt::format("NMC ≠ NMCI+NMCE ({} vs {}+{})", *nmc,
                               *nmci, *nmce)});
  }
  return out;
}

std::vector<double> FeatureMatrix::column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(j));
  return out;
}

void check_feature_matrix(const FeatureMatrix& matrix) {
  for (MetricId id : matrix.feature_ids) {
    if (is_test_quality(id)) {
      throw ForbiddenFeature(std::string(metric_name(id)) +
                             " is a test-quality metric and cannot be a feature");
    }
  }
  if (matrix.rows.size() != matrix.targets.size()) {
    throw DimensionMismatch(fmt::format("{} rows but {} targets",
                                        matrix.rows.size(),
                                        matrix.targets.size()));
  }
  for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
    const auto& row = matrix.rows[i];
    if (row.size() != matrix.feature_ids.size()) {
      throw DimensionMismatch(fmt::format("row {} has {} values, expected {}",
                                          i, row.size(),
                                          matrix.feature_ids.size()));
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw DimensionMismatch(fmt::format("row {} has a non-finite value", i));
      }
    }
  }
}

}  // namespace testability
