#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "uq/numerics.hpp"

namespace uq {

enum class TargetKind { classification, regression };

struct Dataset {
  Matrix features;                       // n x k
  Vector targets_real;                   // regression targets
  std::vector<int> targets_class;        // 0-based contiguous class codes
  std::vector<std::string> feature_names;
  std::vector<std::string> class_labels;  // code -> original label text
  TargetKind target_kind = TargetKind::regression;

  Eigen::Index n() const { return features.rows(); }
  Eigen::Index k() const { return features.cols(); }
};

struct SplitSpec {
  std::vector<Eigen::Index> counts;  // must sum to n
  std::uint64_t master_seed = 0;
};

// Comma-separated, header row required, '.' decimal point. Classification
// labels are re-indexed to 0-based contiguous codes in sorted label order
// (numeric order when every label is a number, so 1..7 becomes 0..6); the
// original labels are retained in class_labels.
Dataset load_csv(const std::string& path, const std::string& target_column,
                 TargetKind target_kind);

// Re-export with 17 significant digits so load/save round-trips exactly.
void save_csv(const Dataset& ds, const std::string& path,
              const std::string& target_column = "target");

// Seed-derived permutation partitions the rows into counts-sized pieces.
std::vector<Dataset> split(const Dataset& ds, const SplitSpec& spec);

struct SineConfig {
  Eigen::Index n_train = 200;
  Eigen::Index n_test = 100;
  double train_lo = -4.0, train_hi = 4.0;
  double test_lo = -6.0, test_hi = 6.0;
  double noisy_lo = 0.0, noisy_hi = 6.0;  // Gaussian noise only inside
  double noise_sigma = 0.3;
  double amplitude = 1.0;
  std::uint64_t master_seed = 0;
};

// y = amplitude * sin(x) plus noise inside the noisy interval; x uniform
// over the respective domain. Train and test are drawn from independent
// substreams.
std::pair<Dataset, Dataset> synth_sine(const SineConfig& config);

struct LinearConfig {
  Eigen::Index n = 100;
  Vector beta;  // intercept first; k = beta.size() - 1 regressors
  double noise_sigma = 1.0;
  bool heteroscedastic = false;  // noise scale grows with feature 1
  std::uint64_t master_seed = 0;
};

// Gaussian design, y = [1|X] beta + noise. Heteroscedastic mode scales the
// noise linearly with the first feature's position in its observed range.
Dataset synth_linear(const LinearConfig& config);

// Overlapping Gaussian class blobs over n_informative leading features,
// remaining features are pure noise. Stand-in generator for desk-scale
// multi-class experiments.
struct BlobsConfig {
  Eigen::Index n = 1000;
  Eigen::Index k = 10;
  Eigen::Index n_informative = 10;
  int n_classes = 3;
  double center_spread = 2.0;  // class centers ~ N(0, spread^2)
  double scatter = 1.5;        // within-class noise
  std::uint64_t master_seed = 0;
};

Dataset synth_blobs(const BlobsConfig& config);

}  // namespace uq
