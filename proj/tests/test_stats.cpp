#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "testability/core/errors.hpp"
#include "testability/stats/spearman.hpp"

using namespace testability;
using namespace testability::stats;

namespace {

// length 3..100, values drawn from a small pool so ties are frequent
std::vector<double> tied_sequence(std::mt19937_64& gen, std::size_t n) {
  const int pool = 2 + static_cast<int>(gen() % 30);
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(gen() % pool) * 0.5 - 3;
  return v;
}

bool has_two_values(const std::vector<double>& v) {
  return std::any_of(v.begin(), v.end(), [&](double x) { return x != v[0]; });
}

}  // namespace

TEST(AverageRanks, Examples) {
  EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 30}), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(average_ranks(std::vector<double>{5, 5}), (std::vector<double>{1.5, 1.5}));
  EXPECT_EQ(average_ranks(std::vector<double>{3, 1, 3, 2}), (std::vector<double>{3.5, 1, 3.5, 2}));
}

TEST(AverageRanks, MatchBruteForce) {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 200; ++t) {
    const auto v = tied_sequence(gen, 1 + gen() % 50);
    EXPECT_EQ(average_ranks(v), support::brute_ranks(v));
  }
}

TEST(Spearman, Monotone) {
  EXPECT_DOUBLE_EQ(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{10, 20, 30}), 1.0);
  EXPECT_DOUBLE_EQ(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}), -1.0);
}

TEST(Spearman, TiedHandExample) {
  // ranks x: 1, 2.5, 2.5, 4   y: 1, 3, 2, 4
  const std::vector<double> x{1, 2, 2, 4}, y{1, 3, 2, 4};
  const std::vector<double> rx{1, 2.5, 2.5, 4}, ry{1, 3, 2, 4};
  // means 2.5; deviations rx: -1.5 0 0 1.5, ry: -1.5 .5 -.5 1.5
  // sxy = 4.5, sxx = 4.5, syy = 5
  EXPECT_NEAR(spearman(x, y), 4.5 / std::sqrt(4.5 * 5), 1e-15);
  EXPECT_NEAR(spearman(x, y), support::brute_pearson(rx, ry), 1e-15);
}

TEST(Spearman, Errors) {
  EXPECT_THROW(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
               DegenerateInput);
  EXPECT_THROW(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), LengthMismatch);
  EXPECT_THROW(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}), DegenerateInput);
}

TEST(Spearman, BruteForceSymmetryAndTransforms) {
  std::mt19937_64 gen(2);
  int cases = 0;
  while (cases < 300) {
    const std::size_t n = 3 + gen() % 98;
    const auto x = tied_sequence(gen, n), y = tied_sequence(gen, n);
    if (!has_two_values(x) || !has_two_values(y)) continue;
    ++cases;
    const double r = spearman(x, y);
    EXPECT_NEAR(r, support::brute_spearman(x, y), 1e-12);
    EXPECT_EQ(r, spearman(y, x));
    std::vector<double> fx(x.size()), neg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      fx[i] = std::exp(x[i]) + 3 * x[i];
      neg[i] = -x[i];
    }
    EXPECT_NEAR(spearman(fx, y), r, 1e-12);
    EXPECT_NEAR(spearman(x, neg), -1.0, 1e-12);
  }
}

TEST(CorrelationTable, PerfectMonotoneAndSkips) {
  std::vector<ClassRecord> records;
  for (int i = 0; i < 10; ++i) {
    ClassRecord r{"c" + std::to_string(i), "", {}};
    r.metrics.set(MetricId::LOC, i * 3);
    r.metrics.set(MetricId::WMC, 10 - i);
    r.metrics.set(MetricId::NOC, 0);  // constant
    r.metrics.set(MetricId::M, i / 10.0);
    records.push_back(r);
  }
  const auto report = correlation_table(records);
  EXPECT_EQ(report.population, 10u);
  ASSERT_EQ(report.full.size(), 34u);
  for (const auto& e : report.full) {
    if (e.metric == MetricId::LOC) EXPECT_DOUBLE_EQ(*e.rho, 1.0);
    if (e.metric == MetricId::WMC) EXPECT_DOUBLE_EQ(*e.rho, -1.0);
    if (e.metric == MetricId::NOC) EXPECT_FALSE(e.rho.has_value());
    if (e.metric == MetricId::NBI) {
      EXPECT_FALSE(e.rho.has_value());
      EXPECT_FALSE(e.skip_reason.empty());
    }
  }
  ASSERT_EQ(report.entries.size(), 2u);
}

TEST(CorrelationTable, FilterAndOrder) {
  std::mt19937_64 gen(9);
  std::vector<ClassRecord> records;
  for (int i = 0; i < 60; ++i) {
    ClassRecord r{"c" + std::to_string(i), "", {}};
    const double m = static_cast<double>(gen() % 101) / 100;
    for (MetricId id : independent_metrics()) {
      const double noise = static_cast<double>(gen() % 100) / 100;
      const double w = static_cast<double>(index_of(id) % 7) / 6;  // 0..1 signal weight
      r.metrics.set(id, (index_of(id) % 2 ? -1 : 1) * w * m + (1 - w) * noise);
    }
    r.metrics.set(MetricId::M, m);
    records.push_back(r);
  }
  const auto report = correlation_table(records, MetricId::M, 0.5);
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    EXPECT_GE(std::abs(report.entries[i].second), 0.5);
    if (i > 0) {
      EXPECT_GE(std::abs(report.entries[i - 1].second), std::abs(report.entries[i].second));
    }
  }
  std::size_t above = 0;
  for (const auto& e : report.full) {
    if (e.rho && std::abs(*e.rho) >= 0.5) ++above;
  }
  EXPECT_EQ(above, report.entries.size());
  EXPECT_GT(above, 0u);
}
