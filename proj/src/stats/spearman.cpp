#include "testability/stats/spearman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "testability/core/errors.hpp"
#include "testability/core/parallel.hpp"

namespace testability::stats {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) hold ranks i+1..j+1.
    const double mean = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw LengthMismatch("sequences of length " + std::to_string(x.size()) + " and " +
                         std::to_string(y.size()));
  }
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("constant sequence has no correlation");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw LengthMismatch("sequences of length " + std::to_string(x.size()) + " and " +
                         std::to_string(y.size()));
  }
  if (x.size() < 3) throw DegenerateInput("spearman needs at least 3 pairs");
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
  };
  if (constant(x) || constant(y)) throw DegenerateInput("constant sequence has no rank correlation");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

std::string_view population_name(Population p) noexcept {
  return p == Population::Raw ? "raw" : "labeled";
}

CorrelationReport correlation_table(std::span<const ClassRecord> records, MetricId target,
                                    double threshold, std::span<const MetricId> features) {
  if (records.size() < 3) throw DegenerateInput("correlation needs at least 3 records");
  CorrelationReport report;
  report.target = target;
  report.threshold = threshold;
  report.population = records.size();

  std::vector<double> y;
  y.reserve(records.size());
  for (const ClassRecord& r : records) y.push_back(r.metrics.at(target));

  report.full = parallel_for_index(features.size(), [&](std::size_t f) {
    const MetricId id = features[f];
    CorrelationEntry entry{id, std::nullopt, {}};
    std::vector<double> x;
    x.reserve(records.size());
    for (const ClassRecord& r : records) {
      const auto v = r.metrics.get(id);
      if (!v) {
        entry.skip_reason = "column absent";
        return entry;
      }
      x.push_back(*v);
    }
    try {
      entry.rho = spearman(x, y);
    } catch (const DegenerateInput& e) {
      entry.skip_reason = e.what();
    }
    return entry;
  });

  for (const CorrelationEntry& e : report.full) {
    if (e.rho && std::fabs(*e.rho) >= threshold) report.entries.emplace_back(e.metric, *e.rho);
  }
  std::sort(report.entries.begin(), report.entries.end(), [](const auto& a, const auto& b) {
    const double fa = std::fabs(a.second), fb = std::fabs(b.second);
    if (fa != fb) return fa > fb;
    return metric_name(a.first) < metric_name(b.first);
  });
  return report;
}

}  // namespace testability::stats
