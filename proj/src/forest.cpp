#include "uq/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "uq/parallel.hpp"

namespace uq {
namespace {

double gini(const std::vector<double>& counts, double total) {
  if (total <= 0.0) return 0.0;
  double sum_sq = 0.0;
  for (double c : counts) sum_sq += c * c;
  return 1.0 - sum_sq / (total * total);
}

std::vector<double> count_classes(const std::vector<int>& y,
                                  const std::vector<int>& rows, int n_classes) {
  std::vector<double> counts(n_classes, 0.0);
  for (int r : rows) counts[y[r]] += 1.0;
  return counts;
}

bool is_pure(const std::vector<double>& counts) {
  int nonzero = 0;
  for (double c : counts) nonzero += c > 0.0;
  return nonzero <= 1;
}

// Distinct feature indices, sorted ascending so tie-breaking in
// best_split is independent of the draw order.
std::vector<int> sample_features(int k, int m, RandomStream& rng) {
  std::vector<int> all(k);
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < m; ++i) {
    const std::size_t j = i + rng.uniform_index(k - i);
    std::swap(all[i], all[j]);
  }
  all.resize(m);
  std::sort(all.begin(), all.end());
  return all;
}

struct TreeBuilder {
  const Matrix& x;
  const std::vector<int>& y;
  int n_classes;
  int max_depth;
  int features_per_split;
  RandomStream& rng;
  Tree tree;

  int build(std::vector<int> rows, int depth) {
    const int node_index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    auto counts = count_classes(y, rows, n_classes);

    if (depth >= max_depth || rows.size() < 2 || is_pure(counts)) {
      tree.nodes[node_index].class_counts = std::move(counts);
      return node_index;
    }

    const auto features =
        sample_features(static_cast<int>(x.cols()), features_per_split, rng);
    const auto split = detail::best_split(x, y, rows, features, n_classes);
    const double parent_gini = gini(counts, static_cast<double>(rows.size()));
    if (split.feature < 0 || split.weighted_gini >= parent_gini) {
      tree.nodes[node_index].class_counts = std::move(counts);
      return node_index;
    }

    std::vector<int> left_rows;
    std::vector<int> right_rows;
    for (int r : rows) {
      (x(r, split.feature) <= split.threshold ? left_rows : right_rows)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    tree.nodes[node_index].feature_index = split.feature;
    tree.nodes[node_index].threshold = split.threshold;
    const int left = build(std::move(left_rows), depth + 1);
    const int right = build(std::move(right_rows), depth + 1);
    tree.nodes[node_index].left = left;
    tree.nodes[node_index].right = right;
    return node_index;
  }
};

int argmax_lowest(const Vector& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return static_cast<int>(best);
}

const TreeNode& route_to_leaf(const Tree& tree, const Vector& x_h) {
  const TreeNode* node = &tree.nodes.front();
  while (!node->is_leaf()) {
    node = x_h[node->feature_index] <= node->threshold
               ? &tree.nodes[node->left]
               : &tree.nodes[node->right];
  }
  return *node;
}

}  // namespace

namespace detail {

SplitChoice best_split(const Matrix& x, const std::vector<int>& y,
                       const std::vector<int>& sample_rows,
                       const std::vector<int>& features, int n_classes) {
  const double n = static_cast<double>(sample_rows.size());
  SplitChoice best;
  best.weighted_gini = std::numeric_limits<double>::infinity();

  std::vector<std::pair<double, int>> ordered;  // (value, label)
  ordered.reserve(sample_rows.size());
  for (int f : features) {
    ordered.clear();
    for (int r : sample_rows) ordered.emplace_back(x(r, f), y[r]);
    std::sort(ordered.begin(), ordered.end());

    std::vector<double> left(n_classes, 0.0);
    std::vector<double> right(n_classes, 0.0);
    for (const auto& [value, label] : ordered) right[label] += 1.0;

    for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
      left[ordered[i].second] += 1.0;
      right[ordered[i].second] -= 1.0;
      if (ordered[i].first == ordered[i + 1].first) continue;
      const double nl = static_cast<double>(i + 1);
      const double nr = n - nl;
      const double weighted =
          (nl * gini(left, nl) + nr * gini(right, nr)) / n;
      if (weighted < best.weighted_gini) {
        best.weighted_gini = weighted;
        best.feature = f;
        best.threshold = 0.5 * (ordered[i].first + ordered[i + 1].first);
      }
    }
  }
  return best;
}

}  // namespace detail

RandomForest train_forest(const Matrix& x, const std::vector<int>& y,
                          const ForestConfig& config) {
  if (x.rows() == 0 || y.empty()) {
    throw EmptyDataset("train_forest: empty dataset");
  }
  if (x.rows() != static_cast<Eigen::Index>(y.size()) || x.rows() < 2) {
    throw EmptyDataset("train_forest: need >= 2 matching rows");
  }
  require_finite(x, "train_forest");

  const int k = static_cast<int>(x.cols());
  int n_classes = 0;
  for (int label : y) {
    if (label < 0) throw InvalidConfig("train_forest: negative class label");
    n_classes = std::max(n_classes, label + 1);
  }

  ForestConfig resolved = config;
  if (resolved.features_per_split == 0) {
    resolved.features_per_split =
        static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k))));
  }
  if (resolved.trees_count < 1 || resolved.max_depth < 0 ||
      resolved.features_per_split < 1 || resolved.features_per_split > k) {
    throw InvalidConfig("train_forest: invalid configuration");
  }

  RandomForest forest;
  forest.n_classes = n_classes;
  forest.config = resolved;
  forest.trees.resize(resolved.trees_count);

  const int n = static_cast<int>(x.rows());
  parallel_for(static_cast<std::size_t>(resolved.trees_count), [&](std::size_t t) {
    RandomStream rng(resolved.master_seed, t);
    std::vector<int> rows(n);
    if (resolved.bootstrap) {
      for (int& r : rows) r = static_cast<int>(rng.uniform_index(n));
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    TreeBuilder builder{x, y, n_classes, resolved.max_depth,
                        resolved.features_per_split, rng, Tree{}};
    builder.build(std::move(rows), 0);
    forest.trees[t] = std::move(builder.tree);
  });
  return forest;
}

ProbVector tree_predict_proba(const Tree& tree, const Vector& x_h) {
  const TreeNode& leaf = route_to_leaf(tree, x_h);
  Vector probs(leaf.class_counts.size());
  double total = 0.0;
  for (double c : leaf.class_counts) total += c;
  for (std::size_t i = 0; i < leaf.class_counts.size(); ++i) {
    probs[static_cast<Eigen::Index>(i)] = leaf.class_counts[i] / total;
  }
  return ProbVector(probs);
}

std::vector<ProbVector> forest_predict_proba(const RandomForest& forest,
                                             const Vector& x_h) {
  std::vector<ProbVector> result;
  result.reserve(forest.trees.size());
  for (const Tree& tree : forest.trees) {
    result.push_back(tree_predict_proba(tree, x_h));
  }
  return result;
}

int forest_predict(const RandomForest& forest, const Vector& x_h,
                   VoteMode mode) {
  const auto per_tree = forest_predict_proba(forest, x_h);
  if (mode == VoteMode::soft) {
    Vector mean = Vector::Zero(forest.n_classes);
    for (const ProbVector& p : per_tree) mean += p.values();
    return argmax_lowest(mean);
  }
  Vector votes = Vector::Zero(forest.n_classes);
  for (const ProbVector& p : per_tree) {
    votes[argmax_lowest(p.values())] += 1.0;
  }
  return argmax_lowest(votes);
}

void repopulate_leaf_counts(RandomForest& forest, const Matrix& x,
                            const std::vector<int>& y) {
  if (x.rows() != static_cast<Eigen::Index>(y.size())) {
    throw DimensionMismatch("repopulate_leaf_counts: x/y mismatch");
  }
  for (Tree& tree : forest.trees) {
    for (TreeNode& node : tree.nodes) {
      if (node.is_leaf()) {
        node.class_counts.assign(forest.n_classes, 0.0);
      }
    }
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      TreeNode* node = &tree.nodes.front();
      const Vector row = x.row(r);
      while (!node->is_leaf()) {
        node = row[node->feature_index] <= node->threshold
                   ? &tree.nodes[node->left]
                   : &tree.nodes[node->right];
      }
      node->class_counts[y[r]] += 1.0;
    }
    // A leaf no test row reaches would have an empty distribution; keep the
    // bootstrap-era invariant that counts sum >= 1 by falling back to ones.
    for (TreeNode& node : tree.nodes) {
      if (node.is_leaf()) {
        double total = 0.0;
        for (double c : node.class_counts) total += c;
        if (total == 0.0) node.class_counts.assign(forest.n_classes, 1.0);
      }
    }
  }
}

void save_forest(const RandomForest& forest, const std::string& path) {
  nlohmann::json doc;
  doc["config"] = {{"trees_count", forest.config.trees_count},
                   {"max_depth", forest.config.max_depth},
                   {"features_per_split", forest.config.features_per_split},
                   {"master_seed", forest.config.master_seed},
                   {"bootstrap", forest.config.bootstrap}};
  doc["n_classes"] = forest.n_classes;
  auto& trees = doc["trees"] = nlohmann::json::array();
  for (const Tree& tree : forest.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) {
        nodes.push_back({{"counts", node.class_counts}});
      } else {
        nodes.push_back({{"feature", node.feature_index},
                         {"threshold", node.threshold},
                         {"left", node.left},
                         {"right", node.right}});
      }
    }
    trees.push_back(std::move(nodes));
  }
  std::ofstream out(path);
  if (!out) throw IoError("save_forest: cannot open " + path);
  out << doc.dump(2) << '\n';
}

RandomForest load_forest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_forest: cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);

  RandomForest forest;
  const auto& cfg = doc.at("config");
  forest.config.trees_count = cfg.at("trees_count").get<int>();
  forest.config.max_depth = cfg.at("max_depth").get<int>();
  forest.config.features_per_split = cfg.at("features_per_split").get<int>();
  forest.config.master_seed = cfg.at("master_seed").get<std::uint64_t>();
  forest.config.bootstrap = cfg.at("bootstrap").get<bool>();
  forest.n_classes = doc.at("n_classes").get<int>();

  for (const auto& nodes : doc.at("trees")) {
    Tree tree;
    for (const auto& record : nodes) {
      TreeNode node;
      if (record.contains("counts")) {
        node.class_counts = record.at("counts").get<std::vector<double>>();
      } else {
        node.feature_index = record.at("feature").get<int>();
        node.threshold = record.at("threshold").get<double>();
        node.left = record.at("left").get<int>();
        node.right = record.at("right").get<int>();
      }
      tree.nodes.push_back(std::move(node));
    }
    forest.trees.push_back(std::move(tree));
  }
  return forest;
}

}  // namespace uq
