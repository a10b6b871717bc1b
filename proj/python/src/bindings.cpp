#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "testability/core/errors.hpp"
#include "testability/core/metric.hpp"
#include "testability/dataset/dataset.hpp"
#include "testability/java/extractor.hpp"
#include "testability/ml/evaluate.hpp"
#include "testability/ranking/ranking.hpp"
#include "testability/report/report.hpp"
#include "testability/stats/spearman.hpp"

namespace py = pybind11;
using namespace testability;

namespace {

using Row = std::map<std::string, double>;

MetricId metric(const std::string& name) {
  if (auto id = parse_metric(name)) return *id;
  throw UnknownMetric("unknown metric '" + name + "'");
}

std::vector<EffectivenessLabel> labels(const std::vector<bool>& effective) {
  std::vector<EffectivenessLabel> out;
  out.reserve(effective.size());
  for (bool e : effective) out.push_back(e ? EffectivenessLabel::Effective : EffectivenessLabel::NonEffective);
  return out;
}

FeatureMatrix matrix(const std::vector<std::vector<double>>& rows, const std::vector<bool>& effective,
                     const std::vector<std::string>& features) {
  FeatureMatrix m;
  for (const auto& f : features) m.feature_ids.push_back(metric(f));
  m.rows = rows;
  m.targets = labels(effective);
  check_feature_matrix(m);
  return m;
}

py::dict record_dict(const ClassRecord& r) {
  py::dict d;
  d["class_id"] = r.class_id;
  d["test_id"] = r.test_id;
  for (MetricId id : all_metrics()) {
    if (auto v = r.metrics.get(id)) d[py::str(std::string(metric_name(id)))] = *v;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Static code and test metrics versus test effectiveness";

  static py::exception<Error> error(m, "TestabilityError");  // message is "Kind: text"
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (e.kind() + ": " + e.what()).c_str());
    }
  });

  m.def("metric_names", [] {
    std::vector<std::string> out;
    for (MetricId id : all_metrics()) out.emplace_back(metric_name(id));
    return out;
  });
  m.def("independent_metrics", [] {
    std::vector<std::string> out;
    for (MetricId id : independent_metrics()) out.emplace_back(metric_name(id));
    return out;
  });

  m.def(
      "extract",
      [](const std::vector<std::filesystem::path>& src, const std::vector<std::filesystem::path>& classes,
         std::optional<std::filesystem::path> pairs) {
        java::ExtractOptions opt;
        opt.source_dirs = src;
        opt.class_dirs = classes;
        opt.pairs_file = std::move(pairs);
        std::vector<ClassRecord> records;
        {
          py::gil_scoped_release release;
          records = java::extract(opt);
        }
        py::list out;
        for (const auto& r : records) out.append(record_dict(r));
        return out;
      },
      py::arg("src"), py::arg("classes") = std::vector<std::filesystem::path>{}, py::arg("pairs") = py::none(),
      "One dict per paired production class: class_id, test_id and metric values.");

  m.def(
      "spearman", [](const std::vector<double>& x, const std::vector<double>& y) { return stats::spearman(x, y); },
      py::arg("x"), py::arg("y"));
  m.def(
      "average_ranks", [](const std::vector<double>& v) { return stats::average_ranks(v); }, py::arg("values"));

  m.def(
      "quartiles",
      [](const std::vector<double>& v) {
        const auto q = dataset::compute_quartiles(v);
        return std::make_pair(q.q1, q.q3);
      },
      py::arg("values"));

  m.def(
      "auc",
      [](const std::vector<double>& scores, const std::vector<bool>& effective) {
        return ml::auc(scores, labels(effective));
      },
      py::arg("scores"), py::arg("effective"));

  m.def(
      "rank_features",
      [](const std::vector<std::vector<double>>& rows, const std::vector<bool>& effective,
         const std::vector<std::string>& features, const std::string& algorithm) {
        const auto a = ranking::parse_algorithm(algorithm);
        if (!a) throw Error("ConfigError", "unknown ranking algorithm '" + algorithm + "'");
        const auto table = ranking::rank_features(matrix(rows, effective, features), *a);
        std::vector<std::pair<std::string, double>> out;
        for (const auto& [id, score] : table.entries) out.emplace_back(metric_name(id), score);
        return out;
      },
      py::arg("rows"), py::arg("effective"), py::arg("features"), py::arg("algorithm") = "InfoGain");

  m.def(
      "evaluate",
      [](const std::vector<std::vector<double>>& rows, const std::vector<bool>& effective,
         const std::vector<std::string>& features, const std::string& classifier, int k, std::uint64_t seed) {
        ml::ClassifierConfig c;
        const auto kind = ml::parse_model_kind(classifier);
        if (!kind) throw Error("ConfigError", "unknown classifier '" + classifier + "'");
        c.kind = *kind;
        const auto fm = matrix(rows, effective, features);
        ml::EvalReport r;
        {
          py::gil_scoped_release release;
          r = ml::evaluate(fm, c, k, seed);
        }
        py::dict d;
        d["accuracy"] = r.accuracy;
        d["precision"] = r.precision;
        d["recall"] = r.recall;
        d["f_measure"] = r.f_measure;
        d["auc"] = r.auc;
        d["scores"] = r.scores;
        return d;
      },
      py::arg("rows"), py::arg("effective"), py::arg("features"), py::arg("classifier") = "RandomForest",
      py::arg("k") = 10, py::arg("seed") = 1);

  m.def(
      "run_pipeline",
      [](const std::filesystem::path& dataset, std::uint64_t seed, const std::map<std::string, std::string>& settings) {
        report::RunConfig c;
        c.dataset = dataset;
        c.seed = seed;
        for (const auto& [k, v] : settings) report::apply_setting(c, k, v);
        report::Bundle bundle;
        {
          py::gil_scoped_release release;
          bundle = report::run_pipeline(c);
        }
        return std::map<std::string, std::string>(bundle.begin(), bundle.end());
      },
      py::arg("dataset"), py::arg("seed"), py::arg("settings") = std::map<std::string, std::string>{},
      "Report files of a full run, keyed by file name.");
}
