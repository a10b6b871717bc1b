#pragma once

// Independent oracles and synthetic data shared by the unit tests and the
// acceptance runner. Nothing here calls into the library's statistics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "testability/core/record.hpp"

namespace support {

namespace fs = std::filesystem;
using testability::EffectivenessLabel;
using testability::FeatureMatrix;
using testability::MetricId;

inline fs::path fixtures() { return fs::path(TESTABILITY_FIXTURES); }

inline std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_text(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

/// Fresh empty directory under the system temp dir.
inline fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("testability-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// rank of v[i] = 1 + (# strictly smaller) + (# equal others) / 2
inline std::vector<double> brute_ranks(std::span<const double> v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] < v[i]) ++less;
      else if (v[j] == v[i] && j != i) ++equal;
    }
    r[i] = 1 + less + equal / 2;
  }
  return r;
}

inline double brute_pearson(std::span<const double> x, std::span<const double> y) {
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

inline double brute_spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = brute_ranks(x);
  const auto ry = brute_ranks(y);
  return brute_pearson(rx, ry);
}

// (#pos above neg + half #tied) / (#pos * #neg)
inline double pair_auc(std::span<const double> s, std::span<const EffectivenessLabel> y) {
  double good = 0, pos = 0, neg = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] == EffectivenessLabel::Effective) ++pos; else ++neg;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] != EffectivenessLabel::Effective) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] == EffectivenessLabel::Effective) continue;
      if (s[i] > s[j]) good += 1;
      else if (s[i] == s[j]) good += 0.5;
    }
  }
  return good / (pos * neg);
}

inline double interpolated_quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = (static_cast<double>(v.size()) - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline double log2_entropy(std::initializer_list<double> counts) {
  double n = 0, h = 0;
  for (double c : counts) n += c;
  for (double c : counts) {
    if (c > 0) h -= c / n * std::log2(c / n);
  }
  return h;
}

/// 400 rows, two features in [0, 10], Effective iff x0 + x1 > 10, with a
/// 1.0 gap around the separating line.
inline FeatureMatrix separable(std::uint64_t seed, std::size_t rows = 400) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  FeatureMatrix m;
  m.feature_ids = {MetricId::LOC, MetricId::WMC};
  while (m.rows.size() < rows) {
    const double a = u(gen), b = u(gen);
    if (std::abs(a + b - 10.0) < 0.5) continue;
    m.rows.push_back({a, b});
    m.targets.push_back(a + b > 10.0 ? EffectivenessLabel::Effective
                                     : EffectivenessLabel::NonEffective);
  }
  return m;
}

inline FeatureMatrix shuffled_labels(FeatureMatrix m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::shuffle(m.targets.begin(), m.targets.end(), gen);
  return m;
}

/// Metric-like non-negative data with ties: a few informative columns and
/// noise, rounded to two decimals.
inline FeatureMatrix metric_like(std::uint64_t seed, std::size_t rows, std::size_t features) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FeatureMatrix m;
  for (std::size_t j = 0; j < features; ++j) {
    m.feature_ids.push_back(testability::independent_metrics()[j]);
  }
  for (std::size_t i = 0; i < rows; ++i) {
    const bool effective = u(gen) < 0.5;
    std::vector<double> row;
    for (std::size_t j = 0; j < features; ++j) {
      double v = u(gen) * 20;
      if (j % 3 == 0) v += effective ? 6 : 0;       // informative
      if (j % 3 == 1) v = std::floor(v / 4);         // heavy ties
      row.push_back(std::round(v * 100) / 100);
    }
    m.rows.push_back(std::move(row));
    m.targets.push_back(effective ? EffectivenessLabel::Effective
                                  : EffectivenessLabel::NonEffective);
  }
  return m;
}

inline FeatureMatrix cubed(FeatureMatrix m) {
  for (auto& row : m.rows) {
    for (double& v : row) v = v * v * v;
  }
  return m;
}

struct ExpectedRow {
  std::string class_id;
  std::map<MetricId, double> values;
};

/// Hand-counted metric table of the fixture corpus (fractions allowed).
std::vector<ExpectedRow> load_expected_metrics();

/// class -> method -> instruction count, from the disassembler listing.
std::map<std::string, std::map<std::string, std::uint64_t>> load_expected_methods();

/// Dataset CSV with every independent metric plus M. Integers for count
/// metrics, ratios in range, NMC = NMCI + NMCE.
std::string synthetic_dataset_csv(std::size_t rows, std::uint64_t seed);

}  // namespace support
