#include "testability/core/metric.hpp"

namespace testability {
namespace {

struct MetricInfo {
  MetricId id;
  std::string_view name;
  std::string_view description;
  DesignProperty property;
  ValueDomain domain;
};

using DP = DesignProperty;
using VD = ValueDomain;

constexpr std::array<MetricInfo, kMetricCount> kInfo{{
    {MetricId::LOC, "LOC", "Lines of Code", DP::Size, VD::Count},
    {MetricId::NBI, "NBI", "Number of Bytecode Instructions", DP::Size, VD::Count},
    {MetricId::LOCCOM, "LOCCOM", "Lines of Comment", DP::Size, VD::Count},
    {MetricId::NPM, "NPM", "Number of Public Methods", DP::Size, VD::Count},
    {MetricId::NSTAM, "NSTAM", "Number of Static Methods", DP::Size, VD::Count},
    {MetricId::NOF, "NOF", "Number of Fields", DP::Size, VD::Count},
    {MetricId::NSTAF, "NSTAF", "Number of Static Fields", DP::Size, VD::Count},
    {MetricId::NMC, "NMC", "Number of Method Calls", DP::Size, VD::Count},
    {MetricId::NMCI, "NMCI", "Number of Method Calls Internal", DP::Size, VD::Count},
    {MetricId::NMCE, "NMCE", "Number of Method Calls External", DP::Size, VD::Count},
    {MetricId::WMC, "WMC", "Weighted Methods per Class", DP::Complexity, VD::Count},
    {MetricId::AMC, "AMC", "Average Method Complexity", DP::Complexity, VD::NonNegative},
    {MetricId::RFC, "RFC", "Response for a Class", DP::Complexity, VD::Count},
    {MetricId::DIT, "DIT", "Depth of Inheritance Tree", DP::Inheritance, VD::Count},
    {MetricId::NOC, "NOC", "Number of Children", DP::Inheritance, VD::Count},
    {MetricId::MFA, "MFA", "Measure of Functional Abstraction", DP::Inheritance, VD::UnitRatio},
    {MetricId::CBO, "CBO", "Coupling Between Object classes", DP::Coupling, VD::Count},
    {MetricId::IC, "IC", "Inheritance Coupling", DP::Coupling, VD::Count},
    {MetricId::CBM, "CBM", "Coupling Between Methods", DP::Coupling, VD::Count},
    {MetricId::Ca, "Ca", "Afferent Coupling", DP::Coupling, VD::Count},
    {MetricId::Ce, "Ce", "Efferent Coupling", DP::Coupling, VD::Count},
    {MetricId::LCOM, "LCOM", "Lack of Cohesion in Methods", DP::Cohesion, VD::Count},
    {MetricId::LCOM3, "LCOM3", "Lack of Cohesion of Methods (normalized)", DP::Cohesion, VD::Lcom3Range},
    {MetricId::CAM, "CAM", "Cohesion Among Methods in class", DP::Cohesion, VD::UnitRatio},
    {MetricId::DAM, "DAM", "Data Access Metric", DP::Encapsulation, VD::UnitRatio},
    {MetricId::NPRIF, "NPRIF", "Number of Private Fields", DP::Encapsulation, VD::Count},
    {MetricId::NPRIM, "NPRIM", "Number of Private Methods", DP::Encapsulation, VD::Count},
    {MetricId::NPROM, "NPROM", "Number of Protected Methods", DP::Encapsulation, VD::Count},
    {MetricId::T_LOC, "T-LOC", "Test - Lines of Code", DP::TestEffort, VD::Count},
    {MetricId::T_NOT, "T-NOT", "Test - Number of Tests", DP::TestEffort, VD::Count},
    {MetricId::T_NOA, "T-NOA", "Test - Number of Assertions", DP::TestEffort, VD::Count},
    {MetricId::T_NMC, "T-NMC", "Test - Number of Method Calls", DP::TestEffort, VD::Count},
    {MetricId::T_WMC, "T-WMC", "Test - Weighted Methods per Class", DP::TestEffort, VD::Count},
    {MetricId::T_AMC, "T-AMC", "Test - Average Method Complexity", DP::TestEffort, VD::NonNegative},
    {MetricId::L, "L", "Line coverage", DP::TestQuality, VD::UnitRatio},
    {MetricId::B, "B", "Branch coverage", DP::TestQuality, VD::UnitRatio},
    {MetricId::M, "M", "Mutation score", DP::TestQuality, VD::UnitRatio},
}};

constexpr std::array<MetricId, kMetricCount> make_all() {
  std::array<MetricId, kMetricCount> out{};
  for (std::size_t i = 0; i < kMetricCount; ++i) out[i] = kInfo[i].id;
  return out;
}

constexpr std::array<MetricId, kMetricCount> kAll = make_all();

constexpr bool table_is_ordered() {
  for (std::size_t i = 0; i < kMetricCount; ++i) {
    if (index_of(kInfo[i].id) != i) return false;
  }
  return true;
}
static_assert(table_is_ordered());

}  // namespace

std::string_view metric_name(MetricId id) noexcept {
  return kInfo[index_of(id)].name;
}

std::string_view metric_description(MetricId id) noexcept {
  return kInfo[index_of(id)].description;
}

std::optional<MetricId> parse_metric(std::string_view name) noexcept {
  for (const auto& info : kInfo) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

DesignProperty design_property(MetricId id) noexcept {
  return kInfo[index_of(id)].property;
}

std::string_view design_property_name(DesignProperty p) noexcept {
  switch (p) {
    case DP::Size: return "Size";
    case DP::Complexity: return "Complexity";
    case DP::Inheritance: return "Inheritance";
    case DP::Coupling: return "Coupling";
    case DP::Cohesion: return "Cohesion";
    case DP::Encapsulation: return "Encapsulation";
    case DP::TestEffort: return "TestEffort";
    case DP::TestQuality: return "TestQuality";
  }
  return "?";
}

ValueDomain value_domain(MetricId id) noexcept {
  return kInfo[index_of(id)].domain;
}

std::span<const MetricId, kMetricCount> all_metrics() noexcept {
  return std::span<const MetricId, kMetricCount>(kAll);
}

std::span<const MetricId, kIndependentCount> independent_metrics() noexcept {
  return std::span<const MetricId, kMetricCount>(kAll)
      .first<kIndependentCount>();
}

}  // namespace testability
