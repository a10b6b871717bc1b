#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace testability {

/// The 37 dataset metrics, in the canonical column order
/// (28 code metrics, 6 test-effort metrics, 3 test-quality metrics).
enum class MetricId : unsigned char {
  // Size
  LOC, NBI, LOCCOM, NPM, NSTAM, NOF, NSTAF, NMC, NMCI, NMCE,
  // Complexity
  WMC, AMC, RFC,
  // Inheritance
  DIT, NOC, MFA,
  // Coupling
  CBO, IC, CBM, Ca, Ce,
  // Cohesion
  LCOM, LCOM3, CAM,
  // Encapsulation
  DAM, NPRIF, NPRIM, NPROM,
  // Test effort
  T_LOC, T_NOT, T_NOA, T_NMC, T_WMC, T_AMC,
  // Test quality
  L, B, M,
};

inline constexpr std::size_t kMetricCount = 37;
inline constexpr std::size_t kCodeMetricCount = 28;
inline constexpr std::size_t kTestEffortMetricCount = 6;
inline constexpr std::size_t kIndependentCount =
    kCodeMetricCount + kTestEffortMetricCount;

enum class DesignProperty : unsigned char {
  Size, Complexity, Inheritance, Coupling, Cohesion, Encapsulation,
  TestEffort, TestQuality,
};

/// How a metric's values are constrained.
enum class ValueDomain : unsigned char {
  Count,       // non-negative integer
  UnitRatio,   // [0, 1]
  Lcom3Range,  // [0, 2]
  NonNegative, // real >= 0 (AMC, T-AMC)
};

constexpr std::size_t index_of(MetricId id) noexcept {
  return static_cast<std::size_t>(id);
}

/// Canonical column name ("LOC", "T-NOT", "Ca", ...).
std::string_view metric_name(MetricId id) noexcept;

/// Long-form name as printed in the metric table, e.g. "Lines of Code".
std::string_view metric_description(MetricId id) noexcept;

std::optional<MetricId> parse_metric(std::string_view name) noexcept;

DesignProperty design_property(MetricId id) noexcept;
std::string_view design_property_name(DesignProperty p) noexcept;

ValueDomain value_domain(MetricId id) noexcept;

/// All 37 metrics in canonical order.
std::span<const MetricId, kMetricCount> all_metrics() noexcept;

/// The 34 independent variables: code metrics followed by test-effort metrics.
std::span<const MetricId, kIndependentCount> independent_metrics() noexcept;

constexpr bool is_test_quality(MetricId id) noexcept {
  return id == MetricId::L || id == MetricId::B || id == MetricId::M;
}

constexpr bool is_independent(MetricId id) noexcept {
  return !is_test_quality(id);
}

}  // namespace testability
