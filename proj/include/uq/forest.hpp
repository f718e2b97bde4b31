#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uq/numerics.hpp"
#include "uq/random.hpp"

namespace uq {

// Node of a classification tree, stored in a flat array. Internal nodes
// route feature <= threshold to `left`, otherwise to `right`. Leaves keep
// per-class observation counts; -1 children mark a leaf.
struct TreeNode {
  int feature_index = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::vector<double> class_counts;

  bool is_leaf() const { return left < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at index 0
};

struct ForestConfig {
  int trees_count = 100;
  int max_depth = 2;
  int features_per_split = 0;  // 0 = ceil(sqrt(k)) default
  std::uint64_t master_seed = 0;
  bool bootstrap = true;
};

struct RandomForest {
  std::vector<Tree> trees;
  int n_classes = 0;
  ForestConfig config;
};

// Trains trees_count trees, each on a size-n with-replacement bootstrap
// sample drawn from the stream derived at the tree's index. Splits minimize
// weighted Gini impurity over midpoints of consecutive sorted unique values,
// considering a fresh random subset of features_per_split features per node.
// Ties break toward the lowest feature index, then the smallest threshold.
RandomForest train_forest(const Matrix& x, const std::vector<int>& y,
                          const ForestConfig& config);

ProbVector tree_predict_proba(const Tree& tree, const Vector& x_h);

// One probability vector per tree, in tree-index order.
std::vector<ProbVector> forest_predict_proba(const RandomForest& forest,
                                             const Vector& x_h);

enum class VoteMode { hard, soft };

// hard = modal per-tree argmax, soft = argmax of the mean probability
// vector. Ties break toward the lowest class index.
int forest_predict(const RandomForest& forest, const Vector& x_h,
                   VoteMode mode);

// Refill every leaf's class_counts from the given dataset (routes each row
// through the tree). Mimics figures that report counts from the full
// training set instead of the tree's own bootstrap sample.
void repopulate_leaf_counts(RandomForest& forest, const Matrix& x,
                            const std::vector<int>& y);

// JSON persistence of config plus nested node records.
void save_forest(const RandomForest& forest, const std::string& path);
RandomForest load_forest(const std::string& path);

namespace detail {
// Exposed for oracle tests: best (feature, threshold, weighted Gini) over
// the given feature set at a single node, or feature -1 when no split
// reduces impurity.
struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double weighted_gini = 0.0;
};
SplitChoice best_split(const Matrix& x, const std::vector<int>& y,
                       const std::vector<int>& sample_rows,
                       const std::vector<int>& features, int n_classes);
}  // namespace detail

}  // namespace uq
