#include "uq/bnn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace uq {
namespace {

// Stream indices carved out of the master seed; fixed so runs are
// reproducible regardless of call order.
enum StreamPurpose : std::uint64_t {
  kInitStream = 0,
  kShuffleStream = 1,
  kDropoutStream = 2,
  kMcStream = 3,
};

void validate_layer_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 2) {
    throw InvalidConfig("bnn: need at least input and output layers");
  }
  for (int s : sizes) {
    if (s < 1) throw InvalidConfig("bnn: non-positive layer size");
  }
  if (sizes.back() != 2) {
    throw InvalidConfig("bnn: output layer must have width 2 (mean, log var)");
  }
}

Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate,
                    RandomStream& rng) {
  const double scale = 1.0 / (1.0 - rate);
  Matrix mask(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      mask(r, c) = rng.uniform() < rate ? 0.0 : scale;
    }
  }
  return mask;
}

struct ForwardTrace {
  std::vector<Matrix> activations;  // activations[0] = input batch
  std::vector<Matrix> pre_acts;     // pre-activation of each layer
  std::vector<Matrix> masks;        // per hidden layer; empty if dropout off
};

// Batched forward pass; records everything backprop needs.
ForwardTrace forward_batch(const Mlp& net, const Matrix& batch,
                           double dropout_rate, RandomStream* rng) {
  const std::size_t n_layers = net.weights.size();
  ForwardTrace trace;
  trace.activations.reserve(n_layers + 1);
  trace.activations.push_back(batch);
  for (std::size_t l = 0; l < n_layers; ++l) {
    Matrix z = trace.activations.back() * net.weights[l];
    z.rowwise() += net.biases[l].transpose();
    trace.pre_acts.push_back(z);
    if (l + 1 < n_layers) {
      Matrix a = z.cwiseMax(0.0);
      if (dropout_rate > 0.0) {
        Matrix mask = dropout_mask(a.rows(), a.cols(), dropout_rate, *rng);
        a = a.cwiseProduct(mask);
        trace.masks.push_back(std::move(mask));
      }
      trace.activations.push_back(std::move(a));
    } else {
      trace.activations.push_back(std::move(z));  // linear output head
    }
  }
  return trace;
}

double batch_loss(const Matrix& output, const Vector& y, double l2_weight,
                  const Mlp& net) {
  const auto mean = output.col(0).array();
  const auto log_var = output.col(1).array();
  const auto inv_var = (-log_var).exp();
  const double data_term =
      (0.5 * inv_var * (y.array() - mean).square() + 0.5 * log_var).mean();
  double l2 = 0.0;
  for (const Matrix& w : net.weights) l2 += w.squaredNorm();
  return data_term + l2_weight * l2;
}

// Gradient of batch_loss with respect to the output columns.
Matrix output_gradient(const Matrix& output, const Vector& y) {
  const double inv_n = 1.0 / static_cast<double>(output.rows());
  Matrix grad(output.rows(), 2);
  const auto residual = y.array() - output.col(0).array();
  const auto inv_var = (-output.col(1).array()).exp();
  grad.col(0) = (-inv_var * residual) * inv_n;
  grad.col(1) = (0.5 - 0.5 * inv_var * residual.square()) * inv_n;
  return grad;
}

struct Gradients {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};

Gradients backward_batch(const Mlp& net, const ForwardTrace& trace,
                         const Vector& y, double l2_weight,
                         double dropout_rate) {
  const std::size_t n_layers = net.weights.size();
  Gradients grads;
  grads.weights.resize(n_layers);
  grads.biases.resize(n_layers);

  Matrix delta = output_gradient(trace.activations.back(), y);
  for (std::size_t l = n_layers; l-- > 0;) {
    grads.weights[l] = trace.activations[l].transpose() * delta +
                       2.0 * l2_weight * net.weights[l];
    grads.biases[l] = delta.colwise().sum();
    if (l == 0) break;
    Matrix upstream = delta * net.weights[l].transpose();
    if (dropout_rate > 0.0) {
      upstream = upstream.cwiseProduct(trace.masks[l - 1]);
    }
    delta = upstream.cwiseProduct(
        (trace.pre_acts[l - 1].array() > 0.0).cast<double>().matrix());
  }
  return grads;
}

}  // namespace

Mlp make_mlp(const std::vector<int>& layer_sizes, RandomStream& rng) {
  validate_layer_sizes(layer_sizes);
  Mlp net;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const int fan_in = layer_sizes[l];
    const int fan_out = layer_sizes[l + 1];
    const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
    Matrix w(fan_in, fan_out);
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        w(r, c) = rng.normal(0.0, scale);
      }
    }
    net.weights.push_back(std::move(w));
    net.biases.push_back(Vector::Zero(fan_out));
  }
  return net;
}

std::pair<double, double> forward(const Mlp& net, const Vector& x_h,
                                  double dropout_rate, RandomStream* rng) {
  if (x_h.size() != net.input_size()) {
    throw ShapeMismatch("forward: input length does not match network");
  }
  if ((dropout_rate > 0.0) != (rng != nullptr)) {
    throw InvalidConfig("forward: rng must be present iff dropout is active");
  }
  const auto trace = forward_batch(net, x_h.transpose(), dropout_rate, rng);
  const Matrix& out = trace.activations.back();
  return {out(0, 0), out(0, 1)};
}

double attenuated_loss(const std::vector<std::pair<double, double>>& preds,
                       const std::vector<double>& targets, double l2_weight,
                       const Mlp& net) {
  if (preds.size() != targets.size() || preds.empty()) {
    throw LengthMismatch("attenuated_loss: preds/targets mismatch or empty");
  }
  Matrix output(preds.size(), 2);
  Vector y(targets.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    output(static_cast<Eigen::Index>(i), 0) = preds[i].first;
    output(static_cast<Eigen::Index>(i), 1) = preds[i].second;
    y[static_cast<Eigen::Index>(i)] = targets[i];
  }
  return batch_loss(output, y, l2_weight, net);
}

Mlp train(const Matrix& x, const Vector& y, const MlpConfig& config,
          std::vector<std::pair<int, double>>* log) {
  validate_layer_sizes(config.layer_sizes);
  if (config.layer_sizes.front() != static_cast<int>(x.cols())) {
    throw ShapeMismatch("train: input layer width must equal feature count");
  }
  if (x.rows() != y.size()) {
    throw DimensionMismatch("train: x/y row mismatch");
  }
  if (config.batch_size < 1 || x.rows() < config.batch_size) {
    throw InvalidConfig("train: need n >= batch_size >= 1");
  }
  if (!(config.dropout_rate >= 0.0 && config.dropout_rate < 1.0)) {
    throw InvalidConfig("train: dropout_rate must be in [0, 1)");
  }
  require_finite(x, "train features");
  require_finite(y, "train targets");

  RandomStream init_rng(config.master_seed, kInitStream);
  Mlp net = make_mlp(config.layer_sizes, init_rng);

  Gradients velocity;
  if (config.momentum > 0.0) {
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
      velocity.weights.push_back(Matrix::Zero(net.weights[l].rows(),
                                              net.weights[l].cols()));
      velocity.biases.push_back(Vector::Zero(net.biases[l].size()));
    }
  }

  const Eigen::Index n = x.rows();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const RandomStream shuffle_base(config.master_seed, kShuffleStream);
  const RandomStream dropout_base(config.master_seed, kDropoutStream);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    RandomStream shuffle_rng = shuffle_base.child(epoch);
    RandomStream mask_rng = dropout_base.child(epoch);
    shuffle_rng.shuffle(order);

    double epoch_loss = 0.0;
    Eigen::Index seen = 0;
    for (Eigen::Index start = 0; start + config.batch_size <= n;
         start += config.batch_size) {
      const Eigen::Index b = config.batch_size;
      Matrix batch(b, x.cols());
      Vector targets(b);
      for (Eigen::Index i = 0; i < b; ++i) {
        batch.row(i) = x.row(order[start + i]);
        targets[i] = y[order[start + i]];
      }

      RandomStream* rng = config.dropout_rate > 0.0 ? &mask_rng : nullptr;
      const auto trace = forward_batch(net, batch, config.dropout_rate, rng);
      const double loss =
          batch_loss(trace.activations.back(), targets, config.l2_weight, net);
      if (!std::isfinite(loss)) {
        throw DivergedTraining("train: non-finite loss (reduce learning rate)");
      }
      epoch_loss += loss * static_cast<double>(b);
      seen += b;

      const Gradients grads = backward_batch(net, trace, targets,
                                             config.l2_weight,
                                             config.dropout_rate);
      for (std::size_t l = 0; l < net.weights.size(); ++l) {
        if (config.momentum > 0.0) {
          velocity.weights[l] = config.momentum * velocity.weights[l] -
                                config.learning_rate * grads.weights[l];
          velocity.biases[l] = config.momentum * velocity.biases[l] -
                               config.learning_rate * grads.biases[l];
          net.weights[l] += velocity.weights[l];
          net.biases[l] += velocity.biases[l];
        } else {
          net.weights[l] -= config.learning_rate * grads.weights[l];
          net.biases[l] -= config.learning_rate * grads.biases[l];
        }
      }
    }
    if (log && seen > 0) {
      log->emplace_back(epoch, epoch_loss / static_cast<double>(seen));
    }
  }
  return net;
}

McPrediction mc_predict(const Mlp& net, const Vector& x_h,
                        const MlpConfig& config) {
  if (config.mc_passes < 2) {
    throw InvalidT("mc_predict: need T >= 2 for a sample variance");
  }
  const int t_passes = config.mc_passes;
  McPrediction result;
  result.samples.resize(t_passes);

  const RandomStream mc_base(config.master_seed, kMcStream);
  for (int t = 0; t < t_passes; ++t) {
    if (config.dropout_rate > 0.0) {
      RandomStream rng = mc_base.child(t);
      result.samples[t] = forward(net, x_h, config.dropout_rate, &rng);
    } else {
      result.samples[t] = forward(net, x_h, 0.0, nullptr);
    }
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  double aleatoric = 0.0;
  for (const auto& [mean_out, log_var_out] : result.samples) {
    sum += mean_out;
    sum_sq += mean_out * mean_out;
    aleatoric += std::exp(log_var_out);
  }
  const double inv_t = 1.0 / static_cast<double>(t_passes);
  result.mean = sum * inv_t;
  // Population form (divisor T): (1/T) sum H^2 - ((1/T) sum H)^2.
  result.epistemic_var = std::max(0.0, sum_sq * inv_t - result.mean * result.mean);
  result.aleatoric_var = aleatoric * inv_t;
  result.total_var = result.epistemic_var + result.aleatoric_var;
  return result;
}

void save_mlp(const Mlp& net, const std::string& path) {
  nlohmann::json doc;
  std::vector<int> sizes{net.input_size()};
  for (const Vector& b : net.biases) sizes.push_back(static_cast<int>(b.size()));
  doc["layer_sizes"] = sizes;
  auto& layers = doc["layers"] = nlohmann::json::array();
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    std::vector<double> flat(net.weights[l].data(),
                             net.weights[l].data() + net.weights[l].size());
    std::vector<double> bias(net.biases[l].data(),
                             net.biases[l].data() + net.biases[l].size());
    layers.push_back({{"weights", flat}, {"biases", bias}});
  }
  std::ofstream out(path);
  if (!out) throw IoError("save_mlp: cannot open " + path);
  out << doc.dump() << '\n';
}

Mlp load_mlp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_mlp: cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  const auto sizes = doc.at("layer_sizes").get<std::vector<int>>();
  validate_layer_sizes(sizes);

  Mlp net;
  const auto& layers = doc.at("layers");
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const auto flat = layers.at(l).at("weights").get<std::vector<double>>();
    const auto bias = layers.at(l).at("biases").get<std::vector<double>>();
    if (flat.size() != static_cast<std::size_t>(sizes[l]) * sizes[l + 1] ||
        bias.size() != static_cast<std::size_t>(sizes[l + 1])) {
      throw ParseError("load_mlp: layer size mismatch in " + path);
    }
    Matrix w = Eigen::Map<const Matrix>(flat.data(), sizes[l], sizes[l + 1]);
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::Map<const Vector>(bias.data(), sizes[l + 1]));
  }
  return net;
}

namespace detail {

double loss_at(const Mlp& net, const Matrix& x, const Vector& y,
               double l2_weight) {
  const auto trace = forward_batch(net, x, 0.0, nullptr);
  return batch_loss(trace.activations.back(), y, l2_weight, net);
}

LossGradient loss_gradient(const Mlp& net, const Matrix& x, const Vector& y,
                           double l2_weight) {
  const auto trace = forward_batch(net, x, 0.0, nullptr);
  Gradients grads = backward_batch(net, trace, y, l2_weight, 0.0);
  return LossGradient{std::move(grads.weights), std::move(grads.biases)};
}

}  // namespace detail
}  // namespace uq
