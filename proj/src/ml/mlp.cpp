#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail.hpp"
#include "testability/core/errors.hpp"
#include "testability/ml/model.hpp"
#include "testability/ml/rng.hpp"

namespace testability::ml {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Offsets into Mlp::weights.
struct Layout {
  std::size_t d, h, w1, b1, w2, b2;
  explicit Layout(const Mlp& net)
      : d(static_cast<std::size_t>(net.inputs)),
        h(static_cast<std::size_t>(net.hidden)),
        w1(0),
        b1(h * d),
        w2(b1 + h),
        b2(w2 + 2 * h) {}
};

struct Forward {
  std::vector<double> z;       // standardized input
  std::vector<double> hidden;  // sigmoid activations
  std::array<double, 2> logit{};
  std::array<double, 2> prob{};
  double log_norm = 0.0;       // log(sum exp(logit))
};

void forward(const Mlp& net, const Layout& L, std::span<const double> row, Forward& f) {
  f.z.resize(L.d);
  f.hidden.resize(L.h);
  for (std::size_t i = 0; i < L.d; ++i) f.z[i] = (row[i] - net.mean[i]) / net.scale[i];
  const double* w = net.weights.data();
  for (std::size_t j = 0; j < L.h; ++j) {
    double a = w[L.b1 + j];
    const double* wj = w + L.w1 + j * L.d;
    for (std::size_t i = 0; i < L.d; ++i) a += wj[i] * f.z[i];
    f.hidden[j] = sigmoid(a);
  }
  for (std::size_t k = 0; k < 2; ++k) {
    double a = w[L.b2 + k];
    const double* wk = w + L.w2 + k * L.h;
    for (std::size_t j = 0; j < L.h; ++j) a += wk[j] * f.hidden[j];
    f.logit[k] = a;
  }
  const double top = std::max(f.logit[0], f.logit[1]);
  f.log_norm = top + std::log(std::exp(f.logit[0] - top) + std::exp(f.logit[1] - top));
  for (std::size_t k = 0; k < 2; ++k) f.prob[k] = std::exp(f.logit[k] - f.log_norm);
}

// Adds d(loss)/d(weights) for one row into `grad`; returns the row's loss.
double backward(const Mlp& net, const Layout& L, std::span<const double> row, int target,
                Forward& f, std::vector<double>& grad) {
  forward(net, L, row, f);
  const double* w = net.weights.data();
  std::array<double, 2> delta_out{f.prob[0], f.prob[1]};
  delta_out[static_cast<std::size_t>(target)] -= 1.0;
  for (std::size_t k = 0; k < 2; ++k) {
    grad[L.b2 + k] += delta_out[k];
    for (std::size_t j = 0; j < L.h; ++j) grad[L.w2 + k * L.h + j] += delta_out[k] * f.hidden[j];
  }
  for (std::size_t j = 0; j < L.h; ++j) {
    const double back = delta_out[0] * w[L.w2 + j] + delta_out[1] * w[L.w2 + L.h + j];
    const double dh = back * f.hidden[j] * (1.0 - f.hidden[j]);
    grad[L.b1 + j] += dh;
    for (std::size_t i = 0; i < L.d; ++i) grad[L.w1 + j * L.d + i] += dh * f.z[i];
  }
  return f.log_norm - f.logit[static_cast<std::size_t>(target)];
}

}  // namespace

double Mlp::score(std::span<const double> row) const {
  Forward f;
  forward(*this, Layout(*this), row, f);
  return f.prob[1];
}

Mlp init_mlp(const FeatureMatrix& matrix, int hidden, std::uint64_t seed) {
  Mlp net;
  net.inputs = static_cast<int>(matrix.feature_count());
  net.hidden = hidden;
  const std::size_t d = matrix.feature_count();
  const double n = static_cast<double>(matrix.row_count());
  net.mean.assign(d, 0.0);
  net.scale.assign(d, 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    double sum = 0.0;
    for (const auto& row : matrix.rows) sum += row[i];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& row : matrix.rows) ss += (row[i] - mean) * (row[i] - mean);
    const double sd = std::sqrt(ss / n);
    net.mean[i] = mean;
    net.scale[i] = sd > 0.0 && std::isfinite(sd) ? sd : 1.0;
  }
  Rng rng(seed);
  net.weights.resize(net.weight_count());
  for (double& w : net.weights) w = rng.uniform(-0.05, 0.05);
  return net;
}

double mlp_loss(const Mlp& net, const FeatureMatrix& matrix) {
  const Layout L(net);
  Forward f;
  double total = 0.0;
  for (std::size_t r = 0; r < matrix.row_count(); ++r) {
    forward(net, L, matrix.rows[r], f);
    total += f.log_norm - f.logit[static_cast<std::size_t>(matrix.targets[r])];
  }
  return total / static_cast<double>(matrix.row_count());
}

std::vector<double> mlp_gradient(const Mlp& net, const FeatureMatrix& matrix) {
  const Layout L(net);
  Forward f;
  std::vector<double> grad(net.weights.size(), 0.0);
  for (std::size_t r = 0; r < matrix.row_count(); ++r) {
    backward(net, L, matrix.rows[r], static_cast<int>(matrix.targets[r]), f, grad);
  }
  for (double& g : grad) g /= static_cast<double>(matrix.row_count());
  return grad;
}

TrainedModel train_mlp(const FeatureMatrix& matrix, const MlpParams& params, std::uint64_t seed) {
  detail::require_two_classes(matrix);
  const int d = static_cast<int>(matrix.feature_count());
  const int hidden = params.hidden > 0 ? params.hidden : (d + 3) / 2;
  Mlp net = init_mlp(matrix, hidden, derive_seed(seed, 0));
  const Layout L(net);

  Rng rng(derive_seed(seed, 1));
  std::vector<std::size_t> order(matrix.row_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> grad(net.weights.size());
  std::vector<double> velocity(net.weights.size(), 0.0);
  Forward f;
  for (int epoch = 1; epoch <= params.epochs; ++epoch) {
    rng.shuffle(order);
    double loss = 0.0;
    for (std::size_t r : order) {
      std::fill(grad.begin(), grad.end(), 0.0);
      loss += backward(net, L, matrix.rows[r], static_cast<int>(matrix.targets[r]), f, grad);
      for (std::size_t i = 0; i < grad.size(); ++i) {
        velocity[i] = params.momentum * velocity[i] - params.learning_rate * grad[i];
        net.weights[i] += velocity[i];
      }
    }
    if (!std::isfinite(loss) ||
        !std::all_of(net.weights.begin(), net.weights.end(), [](double w) { return std::isfinite(w); })) {
      throw NonFiniteLoss(epoch);
    }
  }

  TrainedModel model;
  model.kind = ModelKind::MultilayerPerceptron;
  model.feature_ids = matrix.feature_ids;
  model.seed = seed;
  model.config.kind = ModelKind::MultilayerPerceptron;
  model.config.mlp = params;
  model.mlp = std::move(net);
  return model;
}

}  // namespace testability::ml
