#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "testability/core/record.hpp"

namespace testability::dataset {

struct RawDataset {
  std::vector<ClassRecord> records;
  std::string provenance;
};

struct LabeledRecord {
  ClassRecord record;
  EffectivenessLabel label;
};

struct LabeledDataset {
  std::vector<LabeledRecord> records;
  double q1_threshold = 0.0;
  double q3_threshold = 0.0;
  std::size_t discarded_count = 0;
};

struct IngestOptions {
  bool require_nbi = true;          // source-only corpora have no NBI column
  bool ignore_unknown_columns = false;
  bool validate = true;             // reject rows failing validate_record
};

/// Columns dropped on ingestion.
inline constexpr std::string_view kMetadataColumns[] = {"project", "url", "commit", "class_path",
                                                        "test_path"};

/// Reads class_id/test_id plus any canonical metric columns, with no
/// required-column checks. Empty cells leave the metric absent.
std::vector<ClassRecord> read_records_csv(std::string_view text, bool ignore_unknown_columns = false);

/// Canonical metrics named by a CSV header row (unknown names skipped).
std::vector<MetricId> header_metrics(std::string_view text);

/// Records as CSV: class_id, test_id, then `columns` in the given order.
/// Absent values are written as empty cells.
std::string write_records_csv(const std::vector<ClassRecord>& records,
                              std::span<const MetricId> columns);

/// Dataset ingestion. Metadata columns are dropped; the 34 independent
/// variables (NBI optional per options) and M are required; L and B are
/// optional. class_id comes from a class_id column, else "project:class_path",
/// else class_path. Throws MissingColumn, BadCell, UnknownMetric,
/// DuplicateRecord or Error("InvalidRecord").
RawDataset ingest_csv(std::string_view text, const IngestOptions& options = {},
                      std::string provenance = "<memory>");

RawDataset ingest_file(const std::filesystem::path& path, const IngestOptions& options = {});

struct Quartiles {
  double q1 = 0.0;
  double q3 = 0.0;
};

/// Linear interpolation at position (n-1)q of the sorted values.
/// Throws TooFewValues below 4 values.
Quartiles compute_quartiles(std::span<const double> scores);

/// M <= q1 -> NonEffective, M >= q3 -> Effective, others discarded.
/// Throws DegenerateSplit when q1 = q3.
LabeledDataset label_by_quartiles(const RawDataset& data);

/// Same rule with given thresholds (override or relabeling).
LabeledDataset label_with_thresholds(std::span<const ClassRecord> records, double q1, double q3);

/// Rows in dataset order. Throws ForbiddenFeature for M, L or B and
/// MissingColumn when a record lacks a requested feature.
FeatureMatrix to_feature_matrix(const LabeledDataset& data, std::span<const MetricId> features);

}  // namespace testability::dataset
