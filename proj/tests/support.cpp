#include "support.hpp"

#include <fmt/format.h>

#include "testability/core/metric.hpp"

namespace support {

namespace {

double parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return std::stod(text);
  return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
}

}  // namespace

std::vector<ExpectedRow> load_expected_metrics() {
  std::istringstream in(read_text(fixtures() / "corpus/expected.txt"));
  std::vector<MetricId> columns;
  std::vector<ExpectedRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string first;
    words >> first;
    if (first == "#") {
      std::string w;
      words >> w;
      if (w != "class") continue;
      while (words >> w) columns.push_back(*testability::parse_metric(w));
      continue;
    }
    if (first.empty()) continue;
    ExpectedRow row{first, {}};
    for (MetricId id : columns) {
      std::string v;
      words >> v;
      row.values[id] = parse_fraction(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<std::string, std::map<std::string, std::uint64_t>> load_expected_methods() {
  std::istringstream in(read_text(fixtures() / "classfiles/expected_methods.txt"));
  std::map<std::string, std::map<std::string, std::uint64_t>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream w(line);
    std::string cls, method;
    std::uint64_t n = 0;
    w >> cls >> method >> n;
    out[cls][method] = n;
  }
  return out;
}

std::string synthetic_dataset_csv(std::size_t rows, std::uint64_t seed) {
  using testability::ValueDomain;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  std::string out = "project,class_path,test_path";
  for (MetricId id : testability::independent_metrics()) {
    out += ",";
    out += testability::metric_name(id);
  }
  out += ",M\n";

  for (std::size_t i = 0; i < rows; ++i) {
    const double m = std::round(u(gen) * 20) / 20;  // mutation score, tie-heavy
    out += fmt::format("demo,src/C{0}.java,test/C{0}Test.java", i);
    double nmci = 0, nmce = 0;
    for (MetricId id : testability::independent_metrics()) {
      double v = 0;
      switch (testability::value_domain(id)) {
        case ValueDomain::Count:
          v = std::floor(u(gen) * 30);
          if (id == MetricId::LOC) v = std::floor(200 * (1 - m) + u(gen) * 40);
          if (id == MetricId::NMCI) nmci = v;
          if (id == MetricId::NMCE) nmce = v;
          if (id == MetricId::NMC) v = -1;  // filled below
          break;
        case ValueDomain::UnitRatio:
          v = std::round(u(gen) * 100) / 100;
          if (id == MetricId::CAM) v = std::round((0.3 + 0.6 * m) * 100) / 100;
          break;
        case ValueDomain::Lcom3Range: v = std::round(u(gen) * 200) / 100; break;
        case ValueDomain::NonNegative: v = std::round(u(gen) * 500) / 100; break;
      }
      out += v < 0 ? std::string(",@") : fmt::format(",{}", v);
    }
    const auto at = out.rfind(",@");
    out.replace(at, 2, fmt::format(",{}", nmci + nmce));
    out += fmt::format(",{}\n", m);
  }
  return out;
}

}  // namespace support
