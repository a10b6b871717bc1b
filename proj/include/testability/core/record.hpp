#pragma once

#include <array>
#include <bitset>
#include <optional>
#include <string>
#include <vector>

#include "testability/core/metric.hpp"

namespace testability {

/// Sparse-by-presence metric vector. Counts are stored as doubles too;
/// integrality is checked by validate_record.
class MetricValues {
 public:
  void set(MetricId id, double value) {
    values_[index_of(id)] = value;
    present_.set(index_of(id));
  }

  void erase(MetricId id) {
    values_[index_of(id)] = 0.0;
    present_.reset(index_of(id));
  }

  bool has(MetricId id) const { return present_.test(index_of(id)); }

  std::optional<double> get(MetricId id) const {
    if (!has(id)) return std::nullopt;
    return values_[index_of(id)];
  }

  /// Value of a metric known to be present.
  double at(MetricId id) const;

  std::size_t size() const { return present_.count(); }

  friend bool operator==(const MetricValues&, const MetricValues&) = default;

 private:
  std::array<double, kMetricCount> values_{};
  std::bitset<kMetricCount> present_;
};

struct ClassRecord {
  std::string class_id;
  std::string test_id;
  MetricValues metrics;

  friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

enum class EffectivenessLabel : unsigned char { NonEffective = 0, Effective = 1 };

std::string_view label_name(EffectivenessLabel label) noexcept;
std::optional<EffectivenessLabel> parse_label(std::string_view text) noexcept;

struct Violation {
  std::optional<MetricId> metric;  // unset for cross-metric identities
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every invariant violation of `record`: value ranges, integrality of
/// counts and the NMC = NMCI + NMCE identity. Absent metrics are not
/// violations here; required-column checks belong to ingestion.
std::vector<Violation> validate_record(const ClassRecord& record);

/// Rectangular numeric matrix over labeled records.
struct FeatureMatrix {
  std::vector<MetricId> feature_ids;
  std::vector<std::vector<double>> rows;
  std::vector<EffectivenessLabel> targets;

  std::size_t row_count() const { return rows.size(); }
  std::size_t feature_count() const { return feature_ids.size(); }

  std::vector<double> column(std::size_t j) const;
};

/// Rejects ragged rows, misaligned targets, non-finite cells and
/// test-quality features. Throws DimensionMismatch / ForbiddenFeature.
void check_feature_matrix(const FeatureMatrix& matrix);

}  // namespace testability
