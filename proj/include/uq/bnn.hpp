#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "uq/numerics.hpp"
#include "uq/random.hpp"

namespace uq {

// Fully connected ReLU network with a two-unit linear output head:
// unit 0 predicts the target mean, unit 1 predicts log sigma^2. Dropout
// stays active at inference (Monte Carlo passes) to expose model
// disagreement.
struct MlpConfig {
  std::vector<int> layer_sizes;  // input, hidden..., output (must end in 2)
  double dropout_rate = 0.1;
  double l2_weight = 1e-6;
  double learning_rate = 1e-3;
  double momentum = 0.0;
  int epochs = 500;
  int batch_size = 32;
  int mc_passes = 50;  // T
  std::uint64_t master_seed = 0;
};

struct Mlp {
  std::vector<Matrix> weights;  // weights[l]: fan_in x fan_out
  std::vector<Vector> biases;

  int input_size() const { return static_cast<int>(weights.front().rows()); }
};

struct McPrediction {
  double mean;           // average of the T mean-head outputs
  double epistemic_var;  // population variance (divisor T) of those outputs
  double aleatoric_var;  // mean of the T exp(log sigma^2) outputs
  double total_var;      // epistemic + aleatoric
  std::vector<std::pair<double, double>> samples;  // (mean, log sigma^2) per pass
};

// Random small-weight initialization (He-style scale), deterministic in rng.
Mlp make_mlp(const std::vector<int>& layer_sizes, RandomStream& rng);

// Single forward pass. rng must be non-null iff dropout_rate > 0; surviving
// hidden activations are scaled by 1/(1 - dropout_rate) (inverted dropout),
// so the rng == nullptr pass needs no rescaling.
std::pair<double, double> forward(const Mlp& net, const Vector& x_h,
                                  double dropout_rate, RandomStream* rng);

// Mean attenuated loss over the batch plus l2_weight * sum of squared
// weights (biases excluded). Per sample with s = log sigma^2:
// 0.5 * exp(-s) * (y - mean)^2 + 0.5 * s.
double attenuated_loss(const std::vector<std::pair<double, double>>& preds,
                       const std::vector<double>& targets, double l2_weight,
                       const Mlp& net);

// Minibatch SGD on the attenuated loss with dropout active. Epoch-level
// shuffling and dropout masks come from streams derived off
// config.master_seed. Appends (epoch, loss) to log when provided. Throws
// DivergedTraining on a non-finite loss.
Mlp train(const Matrix& x, const Vector& y, const MlpConfig& config,
          std::vector<std::pair<int, double>>* log = nullptr);

// T dropout-active passes with per-pass derived streams; aggregation is
// over an index-ordered buffer, so the result is scheduling-independent.
McPrediction mc_predict(const Mlp& net, const Vector& x_h,
                        const MlpConfig& config);

// JSON persistence: layer sizes plus flattened weights.
void save_mlp(const Mlp& net, const std::string& path);
Mlp load_mlp(const std::string& path);

namespace detail {
// Analytic gradient of attenuated_loss at dropout 0, laid out as
// (weights..., biases...) per layer. Finite-difference tests check this.
struct LossGradient {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};
LossGradient loss_gradient(const Mlp& net, const Matrix& x, const Vector& y,
                           double l2_weight);
double loss_at(const Mlp& net, const Matrix& x, const Vector& y,
               double l2_weight);
}  // namespace detail

}  // namespace uq
