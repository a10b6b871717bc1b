#include "testability/dataset/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "testability/core/errors.hpp"
#include "testability/dataset/csv.hpp"

namespace testability::dataset {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view cell) {
  cell = trim(cell);
  if (cell.starts_with('+')) cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

bool is_metadata(std::string_view name) {
  return std::find(std::begin(kMetadataColumns), std::end(kMetadataColumns), name) !=
         std::end(kMetadataColumns);
}

struct Layout {
  std::optional<std::size_t> class_id, test_id, project, class_path, test_path;
  std::vector<std::pair<std::size_t, MetricId>> metrics;
};

Layout read_header(const std::vector<std::string>& header, bool ignore_unknown) {
  Layout layout;
  std::set<std::string> seen;
  for (std::size_t j = 0; j < header.size(); ++j) {
    const std::string name(trim(header[j]));
    if (!seen.insert(name).second) throw Error("InputError", "duplicate column " + name);
    if (name == "class_id") {
      layout.class_id = j;
    } else if (name == "test_id") {
      layout.test_id = j;
    } else if (is_metadata(name)) {
      if (name == "project") layout.project = j;
      if (name == "class_path") layout.class_path = j;
      if (name == "test_path") layout.test_path = j;
    } else if (auto id = parse_metric(name)) {
      layout.metrics.emplace_back(j, *id);
    } else if (!ignore_unknown) {
      throw UnknownMetric("unknown column '" + name + "'");
    }
  }
  return layout;
}

std::vector<ClassRecord> read_rows(const CsvTable& table, const Layout& layout) {
  std::vector<ClassRecord> out;
  const std::size_t width = table.rows.front().size();
  for (std::size_t r = 1; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.line_numbers[r];
    if (row.size() != width) {
      throw Error("InputError", "row " + std::to_string(line) + ": expected " +
                                    std::to_string(width) + " cells, found " +
                                    std::to_string(row.size()));
    }
    ClassRecord rec;
    auto cell = [&](std::optional<std::size_t> j) {
      return j ? std::string(trim(row[*j])) : std::string();
    };
    if (layout.class_id) {
      rec.class_id = cell(layout.class_id);
    } else if (layout.class_path) {
      rec.class_id = layout.project ? cell(layout.project) + ":" + cell(layout.class_path)
                                    : cell(layout.class_path);
    } else {
      rec.class_id = "row" + std::to_string(line);
    }
    rec.test_id = layout.test_id ? cell(layout.test_id) : cell(layout.test_path);
    for (const auto& [j, id] : layout.metrics) {
      const std::string_view text = trim(row[j]);
      if (text.empty()) continue;
      const auto v = parse_number(text);
      if (!v) throw BadCell(line, std::string(metric_name(id)), std::string(row[j]));
      rec.metrics.set(id, *v);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

std::vector<ClassRecord> read_records_csv(std::string_view text, bool ignore_unknown_columns) {
  const CsvTable table = parse_csv(text);
  if (table.rows.empty()) throw Error("InputError", "missing header row");
  const Layout layout = read_header(table.rows.front(), ignore_unknown_columns);
  return read_rows(table, layout);
}

std::vector<MetricId> header_metrics(std::string_view text) {
  const CsvTable table = parse_csv(text);
  if (table.rows.empty()) throw Error("InputError", "missing header row");
  std::vector<MetricId> out;
  for (const auto& [j, id] : read_header(table.rows.front(), true).metrics) out.push_back(id);
  return out;
}

std::string write_records_csv(const std::vector<ClassRecord>& records,
                              std::span<const MetricId> columns) {
  std::string out = "class_id,test_id";
  for (MetricId id : columns) {
    out += ',';
    out += metric_name(id);
  }
  out += '\n';
  for (const ClassRecord& r : records) {
    out += csv_escape(r.class_id);
    out += ',';
    out += csv_escape(r.test_id);
    for (MetricId id : columns) {
      out += ',';
      if (auto v = r.metrics.get(id)) out += format_number(*v);
    }
    out += '\n';
  }
  return out;
}

RawDataset ingest_csv(std::string_view text, const IngestOptions& options, std::string provenance) {
  const CsvTable table = parse_csv(text);
  if (table.rows.empty()) throw Error("InputError", "missing header row");
  const Layout layout = read_header(table.rows.front(), options.ignore_unknown_columns);

  std::set<MetricId> present;
  for (const auto& [j, id] : layout.metrics) present.insert(id);
  std::vector<MetricId> required;
  for (MetricId id : independent_metrics()) {
    if (id == MetricId::NBI && !options.require_nbi) continue;
    required.push_back(id);
  }
  required.push_back(MetricId::M);
  std::string missing;
  for (MetricId id : required) {
    if (!present.contains(id)) {
      if (!missing.empty()) missing += ", ";
      missing += metric_name(id);
    }
  }
  if (!missing.empty()) throw MissingColumn("required column(s) absent: " + missing);

  RawDataset data{read_rows(table, layout), std::move(provenance)};
  std::set<std::pair<std::string, std::string>> keys;
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    const ClassRecord& rec = data.records[i];
    const std::size_t line = table.line_numbers[i + 1];
    for (MetricId id : required) {
      if (!rec.metrics.has(id)) throw BadCell(line, std::string(metric_name(id)), "");
    }
    if (!keys.emplace(rec.class_id, rec.test_id).second) {
      throw DuplicateRecord("row " + std::to_string(line) + ": duplicate record (" +
                            rec.class_id + ", " + rec.test_id + ")");
    }
    if (options.validate) {
      const auto violations = validate_record(rec);
      if (!violations.empty()) {
        throw Error("InvalidRecord", "row " + std::to_string(line) + " (" + rec.class_id +
                                         "): " + violations.front().message);
      }
    }
  }
  return data;
}

RawDataset ingest_file(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("InputError", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return ingest_csv(ss.str(), options, path.string());
  } catch (const BadCell&) {
    throw;
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

Quartiles compute_quartiles(std::span<const double> scores) {
  if (scores.size() < 4) {
    throw TooFewValues("quartiles need at least 4 values, got " + std::to_string(scores.size()));
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  auto at = [&](double q) {
    const double pos = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  return {at(0.25), at(0.75)};
}

LabeledDataset label_with_thresholds(std::span<const ClassRecord> records, double q1, double q3) {
  if (!(q1 < q3)) {
    throw DegenerateSplit("quartile thresholds q1=" + format_number(q1) +
                          " and q3=" + format_number(q3) + " leave no room for two classes");
  }
  LabeledDataset out;
  out.q1_threshold = q1;
  out.q3_threshold = q3;
  for (const ClassRecord& r : records) {
    const double m = r.metrics.at(MetricId::M);
    if (m <= q1) {
      out.records.push_back({r, EffectivenessLabel::NonEffective});
    } else if (m >= q3) {
      out.records.push_back({r, EffectivenessLabel::Effective});
    } else {
      ++out.discarded_count;
    }
  }
  return out;
}

LabeledDataset label_by_quartiles(const RawDataset& data) {
  if (data.records.empty()) throw TooFewValues("cannot label an empty dataset");
  std::vector<double> scores;
  scores.reserve(data.records.size());
  for (const ClassRecord& r : data.records) scores.push_back(r.metrics.at(MetricId::M));
  const Quartiles q = compute_quartiles(scores);
  return label_with_thresholds(data.records, q.q1, q.q3);
}

FeatureMatrix to_feature_matrix(const LabeledDataset& data, std::span<const MetricId> features) {
  FeatureMatrix out;
  for (MetricId id : features) {
    if (is_test_quality(id)) {
      throw ForbiddenFeature(std::string(metric_name(id)) + " is a test-quality metric, not a feature");
    }
    if (std::find(out.feature_ids.begin(), out.feature_ids.end(), id) != out.feature_ids.end()) {
      throw DimensionMismatch(std::string(metric_name(id)) + " requested twice");
    }
    out.feature_ids.push_back(id);
  }
  out.rows.reserve(data.records.size());
  for (const LabeledRecord& lr : data.records) {
    std::vector<double> row;
    row.reserve(features.size());
    for (MetricId id : features) {
      const auto v = lr.record.metrics.get(id);
      if (!v) {
        throw MissingColumn(lr.record.class_id + " has no " + std::string(metric_name(id)));
      }
      row.push_back(*v);
    }
    out.rows.push_back(std::move(row));
    out.targets.push_back(lr.label);
  }
  return out;
}

}  // namespace testability::dataset
