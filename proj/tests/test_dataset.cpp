#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "testability/core/errors.hpp"
#include "testability/dataset/csv.hpp"
#include "testability/dataset/dataset.hpp"

using namespace testability;
using namespace testability::dataset;

namespace {

ClassRecord with_m(double m, std::string id = "") {
  ClassRecord r{id, "", {}};
  r.metrics.set(MetricId::M, m);
  return r;
}

std::vector<ClassRecord> scores(const std::vector<double>& ms) {
  std::vector<ClassRecord> out;
  for (std::size_t i = 0; i < ms.size(); ++i) out.push_back(with_m(ms[i], "c" + std::to_string(i)));
  return out;
}

std::string header_with_metadata() {
  std::string h = "project,url,commit,class_path,test_path";
  for (MetricId id : independent_metrics()) h += "," + std::string(metric_name(id));
  return h + ",M\n";
}

std::string row(int i, double m) {
  std::string r = "proj,http://x,abc,src/C" + std::to_string(i) + ".java,test/T.java";
  for (MetricId id : independent_metrics()) {
    r += id == MetricId::NMC ? ",2" : (id == MetricId::NMCI || id == MetricId::NMCE) ? ",1" : ",0";
  }
  return r + "," + format_number(m) + "\n";
}

}  // namespace

// ---- csv

TEST(Csv, QuotesCrlfBomAndComments) {
  const auto t = parse_csv("\xEF\xBB\xBF" "a,\"b,c\",\"say \"\"hi\"\"\"\r\n# note\r\n\r\n1,2,3\r\n");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0], (std::vector<std::string>{"a", "b,c", "say \"hi\""}));
  EXPECT_EQ(t.rows[1], (std::vector<std::string>{"1", "2", "3"}));
  EXPECT_EQ(t.line_numbers, (std::vector<std::size_t>{1, 4}));
}

TEST(Csv, EscapeRoundTrip) {
  for (std::string s : {"plain", "a,b", "q\"uote", "line\nbreak", ""}) {
    const auto t = parse_csv(csv_escape(s) + ",x\n");
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][0], s);
  }
}

TEST(Csv, NumbersRoundTrip) {
  EXPECT_EQ(format_number(0), "0");
  EXPECT_EQ(format_number(42), "42");
  EXPECT_EQ(format_number(-3), "-3");
  EXPECT_EQ(format_number(0.25), "0.25");
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(gen);
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

// ---- ingestion

TEST(Ingest, DropsMetadataColumns) {
  const auto raw = ingest_csv(header_with_metadata() + row(1, 0.5) + row(2, 0.1) + row(3, 0.9));
  ASSERT_EQ(raw.records.size(), 3u);
  EXPECT_EQ(raw.records[0].class_id, "proj:src/C1.java");
  EXPECT_EQ(raw.records[0].metrics.size(), 35u);
  EXPECT_DOUBLE_EQ(raw.records[2].metrics.at(MetricId::M), 0.9);
}

TEST(Ingest, BadCellNamesRow) {
  auto text = header_with_metadata() + row(1, 0.5) + row(2, 0.1);
  text.replace(text.rfind("0.1"), 3, "n/a");
  try {
    ingest_csv(text);
    FAIL();
  } catch (const BadCell& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_EQ(e.column(), "M");
    EXPECT_EQ(e.content(), "n/a");
  }
}

TEST(Ingest, MissingColumnListsAll) {
  std::string text = "class_id,LOC\nA,3\n";
  try {
    ingest_csv(text);
    FAIL();
  } catch (const MissingColumn& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("NBI"), std::string::npos);
    EXPECT_NE(what.find("T-AMC"), std::string::npos);
    EXPECT_NE(what.find("M"), std::string::npos);
  }
}

TEST(Ingest, NbiOptionalWhenConfigured) {
  auto text = header_with_metadata() + row(1, 0.5);
  // drop the NBI column (second metric)
  auto strip = [](std::string line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        cells.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    cells.erase(cells.begin() + 6);
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    return out;
  };
  const auto nl = text.find('\n');
  std::string header = text.substr(0, nl), body = text.substr(nl + 1, text.size() - nl - 2);
  const std::string without = strip(header) + "\n" + strip(body) + "\n";
  EXPECT_THROW(ingest_csv(without), MissingColumn);
  IngestOptions opt;
  opt.require_nbi = false;
  const auto raw = ingest_csv(without, opt);
  EXPECT_FALSE(raw.records[0].metrics.has(MetricId::NBI));
}

TEST(Ingest, DuplicateRecord) {
  auto text = header_with_metadata() + row(1, 0.5) + row(1, 0.6);
  EXPECT_THROW(ingest_csv(text), DuplicateRecord);
}

TEST(Ingest, UnknownColumns) {
  std::string text = header_with_metadata();
  text.insert(text.find('\n'), ",Extra");
  auto r = row(1, 0.5);
  r.insert(r.find('\n'), ",7");
  EXPECT_THROW(ingest_csv(text + r), UnknownMetric);
  IngestOptions opt;
  opt.ignore_unknown_columns = true;
  EXPECT_EQ(ingest_csv(text + r, opt).records.size(), 1u);
}

TEST(Ingest, InvalidRecordRejected) {
  auto r = row(1, 1.5);  // M out of [0,1]
  try {
    ingest_csv(header_with_metadata() + r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "InvalidRecord");
  }
}

TEST(Ingest, SyntheticDatasetIsValid) {
  const auto raw = ingest_csv(support::synthetic_dataset_csv(50, 1));
  EXPECT_EQ(raw.records.size(), 50u);
}

// ---- quartiles

TEST(Quartiles, ExactPositions) {
  const std::vector<double> v{4, 0, 3, 1, 2};
  const auto q = compute_quartiles(v);
  EXPECT_DOUBLE_EQ(q.q1, 1.0);
  EXPECT_DOUBLE_EQ(q.q3, 3.0);
}

TEST(Quartiles, Interpolated) {
  const std::vector<double> v{1, 2, 3, 4};
  const auto q = compute_quartiles(v);
  EXPECT_DOUBLE_EQ(q.q1, 1.75);
  EXPECT_DOUBLE_EQ(q.q3, 3.25);
}

TEST(Quartiles, TooFew) {
  const std::vector<double> v{1, 2, 3};
  EXPECT_THROW(compute_quartiles(v), TooFewValues);
}

TEST(Quartiles, MatchInterpolationOracle) {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(4 + gen() % 60);
    for (double& x : v) x = static_cast<double>(gen() % 21) / 20;
    const auto q = compute_quartiles(v);
    EXPECT_DOUBLE_EQ(q.q1, support::interpolated_quantile(v, 0.25));
    EXPECT_DOUBLE_EQ(q.q3, support::interpolated_quantile(v, 0.75));
  }
}

// ---- labeling

TEST(Labeling, PaperThresholdExamples) {
  const auto data = scores({0.7, 1.0, 0.4, 0.2});
  const auto l = label_with_thresholds(data, 0.4, 1.0);
  EXPECT_EQ(l.discarded_count, 1u);
  ASSERT_EQ(l.records.size(), 3u);
  EXPECT_EQ(l.records[0].record.class_id, "c1");
  EXPECT_EQ(l.records[0].label, EffectivenessLabel::Effective);
  EXPECT_EQ(l.records[1].label, EffectivenessLabel::NonEffective);  // 0.4 kept
  EXPECT_EQ(l.records[2].label, EffectivenessLabel::NonEffective);
}

TEST(Labeling, DegenerateSplit) {
  const auto data = scores({0.5, 0.5, 0.5, 0.5, 0.9});
  RawDataset raw{data, "x"};
  EXPECT_THROW(label_by_quartiles(raw), DegenerateSplit);
}

TEST(Labeling, QuartileProperties) {
  std::mt19937_64 gen(5);
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<double> ms(4 + gen() % 80);
    for (double& m : ms) m = static_cast<double>(gen() % 11) / 10;
    RawDataset raw{scores(ms), "random"};
    LabeledDataset l;
    try {
      l = label_by_quartiles(raw);
    } catch (const DegenerateSplit&) {
      continue;
    }
    ++checked;
    EXPECT_EQ(l.records.size() + l.discarded_count, ms.size());
    for (const auto& r : l.records) {
      const double m = r.record.metrics.at(MetricId::M);
      EXPECT_FALSE(m > l.q1_threshold && m < l.q3_threshold);
      EXPECT_EQ(r.label, m >= l.q3_threshold ? EffectivenessLabel::Effective
                                             : EffectivenessLabel::NonEffective);
    }
    std::vector<ClassRecord> survivors;
    for (const auto& r : l.records) survivors.push_back(r.record);
    const auto again = label_with_thresholds(survivors, l.q1_threshold, l.q3_threshold);
    EXPECT_EQ(again.discarded_count, 0u);
    ASSERT_EQ(again.records.size(), l.records.size());
    for (std::size_t i = 0; i < again.records.size(); ++i) {
      EXPECT_EQ(again.records[i].label, l.records[i].label);
    }
  }
  EXPECT_GT(checked, 400);
}

// ---- feature matrix

TEST(FeatureMatrixBuild, TargetIsForbidden) {
  LabeledDataset l;
  const std::vector<MetricId> f{MetricId::LOC, MetricId::M};
  EXPECT_THROW(to_feature_matrix(l, f), ForbiddenFeature);
}

TEST(FeatureMatrixBuild, AlignedRows) {
  auto a = with_m(0.1, "a"), b = with_m(0.9, "b");
  a.metrics.set(MetricId::LOC, 10);
  a.metrics.set(MetricId::WMC, 3);
  b.metrics.set(MetricId::LOC, 20);
  b.metrics.set(MetricId::WMC, 4);
  const std::vector<ClassRecord> data{a, b};
  const auto l = label_with_thresholds(data, 0.2, 0.8);
  const std::vector<MetricId> f{MetricId::LOC, MetricId::WMC};
  const auto m = to_feature_matrix(l, f);
  EXPECT_EQ(m.rows, (std::vector<std::vector<double>>{{10, 3}, {20, 4}}));
  EXPECT_EQ(m.targets, (std::vector<EffectivenessLabel>{EffectivenessLabel::NonEffective,
                                                         EffectivenessLabel::Effective}));
  const std::vector<MetricId> missing{MetricId::RFC};
  EXPECT_THROW(to_feature_matrix(l, missing), MissingColumn);
}
