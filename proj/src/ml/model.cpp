#include "testability/ml/model.hpp"

#include <fmt/format.h>

#include <charconv>
#include <sstream>

#include "testability/core/errors.hpp"

namespace testability::ml {

std::string_view model_kind_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::DecisionTree: return "DecisionTree";
    case ModelKind::RandomForest: return "RandomForest";
    case ModelKind::MultilayerPerceptron: return "MultilayerPerceptron";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept {
  for (ModelKind k : {ModelKind::DecisionTree, ModelKind::RandomForest, ModelKind::MultilayerPerceptron}) {
    if (text == model_kind_name(k)) return k;
  }
  if (text == "dt" || text == "tree") return ModelKind::DecisionTree;
  if (text == "rf" || text == "forest") return ModelKind::RandomForest;
  if (text == "mlp") return ModelKind::MultilayerPerceptron;
  return std::nullopt;
}

TrainedModel train(const FeatureMatrix& matrix, const ClassifierConfig& config, std::uint64_t seed) {
  TrainedModel model;
  switch (config.kind) {
    case ModelKind::DecisionTree: model = train_decision_tree(matrix, config.tree); break;
    case ModelKind::RandomForest: model = train_random_forest(matrix, config.forest, seed); break;
    case ModelKind::MultilayerPerceptron: model = train_mlp(matrix, config.mlp, seed); break;
  }
  model.config = config;
  model.seed = seed;
  return model;
}

Prediction predict(const TrainedModel& model, std::span<const double> row) {
  if (row.size() != model.feature_ids.size()) {
    throw DimensionMismatch("row has " + std::to_string(row.size()) + " values, model expects " +
                            std::to_string(model.feature_ids.size()));
  }
  double score = 0.0;
  switch (model.kind) {
    case ModelKind::DecisionTree:
      score = model.trees.front().score(row);
      break;
    case ModelKind::RandomForest: {
      std::size_t votes = 0;
      for (const Tree& t : model.trees) votes += t.score(row) >= 0.5 ? 1 : 0;
      score = static_cast<double>(votes) / static_cast<double>(model.trees.size());
      break;
    }
    case ModelKind::MultilayerPerceptron:
      score = model.mlp->score(row);
      break;
  }
  return {score >= 0.5 ? EffectivenessLabel::Effective : EffectivenessLabel::NonEffective, score};
}

// Text format, one record per line:
//   testability-model 1
//   kind <name> / seed <n> / features <ids...> / param <key> <value> ...
//   tree <nodes>, followed by that many "node f threshold left right c0 c1"
//   mlp <inputs> <hidden>, then "mean ...", "scale ...", "weights ..."
//   end
namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

template <typename T>
void join(std::string& out, const std::vector<T>& xs) {
  for (const T& x : xs) {
    out += ' ';
    if constexpr (std::is_same_v<T, double>) {
      out += num(x);
    } else {
      out += x;
    }
  }
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next non-empty line split on spaces; empty at end of input.
  std::vector<std::string_view> next() {
    while (pos_ < text_.size()) {
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      std::vector<std::string_view> words;
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        const std::size_t j = std::min(line.find(' ', i), line.size());
        if (j > i) words.push_back(line.substr(i, j - i));
        i = j;
      }
      if (!words.empty()) return words;
    }
    return {};
  }

  std::vector<std::string_view> expect(std::string_view key, std::size_t min_words) {
    auto words = next();
    if (words.empty() || words.front() != key || words.size() < min_words) {
      fail("expected '" + std::string(key) + "'");
    }
    return words;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ModelFormatError("model line " + std::to_string(line_) + ": " + what);
  }

  template <typename T>
  T parse(std::string_view word) const {
    T v{};
    const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc{} || ptr != word.data() + word.size()) {
      fail("bad number '" + std::string(word) + "'");
    }
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

}  // namespace

std::string serialize_model(const TrainedModel& model) {
  std::string out = "testability-model 1\n";
  out += fmt::format("kind {}\nseed {}\nfeatures", model_kind_name(model.kind), model.seed);
  for (MetricId id : model.feature_ids) {
    out += ' ';
    out += metric_name(id);
  }
  out += '\n';
  const ClassifierConfig& c = model.config;
  out += fmt::format("param tree.min_leaf {}\nparam tree.max_depth {}\n", c.tree.min_leaf, c.tree.max_depth);
  out += fmt::format(
      "param forest.trees {}\nparam forest.features_per_split {}\nparam forest.min_leaf {}\n"
      "param forest.max_depth {}\nparam forest.bootstrap {}\n",
      c.forest.trees, c.forest.features_per_split, c.forest.min_leaf, c.forest.max_depth,
      c.forest.bootstrap ? 1 : 0);
  out += fmt::format(
      "param mlp.hidden {}\nparam mlp.learning_rate {}\nparam mlp.momentum {}\nparam mlp.epochs {}\n",
      c.mlp.hidden, num(c.mlp.learning_rate), num(c.mlp.momentum), c.mlp.epochs);
  for (const Tree& t : model.trees) {
    out += fmt::format("tree {}\n", t.nodes.size());
    for (const TreeNode& n : t.nodes) {
      out += fmt::format("node {} {} {} {} {} {}\n", n.feature, num(n.threshold), n.left, n.right,
                         num(n.counts[0]), num(n.counts[1]));
    }
  }
  if (model.mlp) {
    const Mlp& m = *model.mlp;
    out += fmt::format("mlp {} {}\nmean", m.inputs, m.hidden);
    join(out, m.mean);
    out += "\nscale";
    join(out, m.scale);
    out += "\nweights";
    join(out, m.weights);
    out += '\n';
  }
  out += "end\n";
  return out;
}

TrainedModel deserialize_model(std::string_view text) {
  LineReader in(text);
  auto header = in.next();
  if (header.size() != 2 || header[0] != "testability-model" || header[1] != "1") {
    in.fail("not a testability model file");
  }
  TrainedModel model;
  const auto kind = parse_model_kind(in.expect("kind", 2)[1]);
  if (!kind) in.fail("unknown model kind");
  model.kind = *kind;
  model.config.kind = *kind;
  model.seed = in.parse<std::uint64_t>(in.expect("seed", 2)[1]);
  const auto features = in.expect("features", 1);
  for (std::size_t i = 1; i < features.size(); ++i) {
    const auto id = parse_metric(features[i]);
    if (!id) in.fail("unknown feature '" + std::string(features[i]) + "'");
    model.feature_ids.push_back(*id);
  }
  const auto d = static_cast<int>(model.feature_ids.size());

  ClassifierConfig& c = model.config;
  for (auto words = in.next();; words = in.next()) {
    if (words.empty()) in.fail("missing 'end'");
    const std::string_view key = words[0];
    if (key == "end") break;
    if (key == "param") {
      if (words.size() != 3) in.fail("param needs a name and a value");
      const std::string_view name = words[1], v = words[2];
      if (name == "tree.min_leaf") c.tree.min_leaf = in.parse<int>(v);
      else if (name == "tree.max_depth") c.tree.max_depth = in.parse<int>(v);
      else if (name == "forest.trees") c.forest.trees = in.parse<int>(v);
      else if (name == "forest.features_per_split") c.forest.features_per_split = in.parse<int>(v);
      else if (name == "forest.min_leaf") c.forest.min_leaf = in.parse<int>(v);
      else if (name == "forest.max_depth") c.forest.max_depth = in.parse<int>(v);
      else if (name == "forest.bootstrap") c.forest.bootstrap = in.parse<int>(v) != 0;
      else if (name == "mlp.hidden") c.mlp.hidden = in.parse<int>(v);
      else if (name == "mlp.learning_rate") c.mlp.learning_rate = in.parse<double>(v);
      else if (name == "mlp.momentum") c.mlp.momentum = in.parse<double>(v);
      else if (name == "mlp.epochs") c.mlp.epochs = in.parse<int>(v);
      else in.fail("unknown parameter '" + std::string(name) + "'");
    } else if (key == "tree") {
      if (words.size() != 2) in.fail("tree needs a node count");
      const auto count = in.parse<std::size_t>(words[1]);
      if (count == 0) in.fail("empty tree");
      Tree t;
      for (std::size_t i = 0; i < count; ++i) {
        const auto w = in.expect("node", 7);
        TreeNode n;
        n.feature = in.parse<int>(w[1]);
        n.threshold = in.parse<double>(w[2]);
        n.left = in.parse<int>(w[3]);
        n.right = in.parse<int>(w[4]);
        n.counts = {in.parse<double>(w[5]), in.parse<double>(w[6])};
        const auto limit = static_cast<int>(count);
        if (!n.is_leaf() && (n.feature >= d || n.left <= static_cast<int>(i) || n.right <= static_cast<int>(i) ||
                             n.left >= limit || n.right >= limit)) {
          in.fail("node " + std::to_string(i) + " is inconsistent");
        }
        t.nodes.push_back(n);
      }
      model.trees.push_back(std::move(t));
    } else if (key == "mlp") {
      if (words.size() != 3) in.fail("mlp needs inputs and hidden size");
      Mlp m;
      m.inputs = in.parse<int>(words[1]);
      m.hidden = in.parse<int>(words[2]);
      if (m.inputs != d || m.hidden < 1) in.fail("mlp shape does not match the features");
      auto read_vec = [&](std::string_view name, std::size_t n) {
        const auto w = in.expect(name, 1);
        if (w.size() != n + 1) in.fail(std::string(name) + " has the wrong length");
        std::vector<double> v;
        for (std::size_t i = 1; i < w.size(); ++i) v.push_back(in.parse<double>(w[i]));
        return v;
      };
      m.mean = read_vec("mean", static_cast<std::size_t>(d));
      m.scale = read_vec("scale", static_cast<std::size_t>(d));
      m.weights = read_vec("weights", m.weight_count());
      model.mlp = std::move(m);
    } else {
      in.fail("unexpected '" + std::string(key) + "'");
    }
  }
  const bool ok = model.kind == ModelKind::MultilayerPerceptron
                      ? model.mlp.has_value() && model.trees.empty()
                      : !model.mlp && (model.kind == ModelKind::RandomForest ? !model.trees.empty()
                                                                              : model.trees.size() == 1);
  if (!ok) throw ModelFormatError("model body does not match kind " + std::string(model_kind_name(model.kind)));
  return model;
}

}  // namespace testability::ml
