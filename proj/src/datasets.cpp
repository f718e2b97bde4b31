#include "uq/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "uq/random.hpp"

namespace uq {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  // Allow trailing whitespace only.
  while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
  if (used == 0 || used != cell.size()) {
    throw NonNumericCell("load_csv: non-numeric cell at row " +
                         std::to_string(row) + ", column " + std::to_string(col));
  }
  return value;
}

std::string format_value(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& target_column,
                 TargetKind target_kind) {
  std::ifstream in(path);
  if (!in) throw IoError("load_csv: cannot open " + path);

  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_line(line));
  }
  if (rows.size() < 2) {
    throw ParseError("load_csv: need a header and at least one data row");
  }

  const auto& header = rows.front();
  const auto target_it =
      std::find(header.begin(), header.end(), target_column);
  if (target_it == header.end()) {
    throw MissingColumn("load_csv: no column named '" + target_column + "'");
  }
  const std::size_t target_col =
      static_cast<std::size_t>(target_it - header.begin());
  const std::size_t width = header.size();

  Dataset ds;
  ds.target_kind = target_kind;
  for (std::size_t c = 0; c < width; ++c) {
    if (c != target_col) ds.feature_names.push_back(header[c]);
  }

  const std::size_t n = rows.size() - 1;
  ds.features.resize(n, static_cast<Eigen::Index>(width - 1));
  std::vector<std::string> raw_targets(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& cells = rows[r + 1];
    if (cells.size() != width) {
      throw ParseError("load_csv: row " + std::to_string(r + 2) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(width));
    }
    Eigen::Index fc = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (c == target_col) {
        raw_targets[r] = cells[c];
      } else {
        ds.features(static_cast<Eigen::Index>(r), fc++) =
            parse_cell(cells[c], r + 2, c + 1);
      }
    }
  }

  if (target_kind == TargetKind::regression) {
    ds.targets_real.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      ds.targets_real[static_cast<Eigen::Index>(r)] =
          parse_cell(raw_targets[r], r + 2, target_col + 1);
    }
  } else {
    // Sorted unique labels map to contiguous codes 0..m-1 (numeric order
    // when every label parses as a number, so labels 1..7 become 0..6).
    std::vector<std::string> unique = raw_targets;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    const bool all_numeric = std::all_of(
        unique.begin(), unique.end(), [](const std::string& s) {
          try {
            std::size_t used = 0;
            std::stod(s, &used);
            return used == s.size();
          } catch (const std::exception&) {
            return false;
          }
        });
    if (all_numeric) {
      std::sort(unique.begin(), unique.end(),
                [](const std::string& a, const std::string& b) {
                  return std::stod(a) < std::stod(b);
                });
    }
    std::map<std::string, int> codes;
    for (std::size_t i = 0; i < unique.size(); ++i) {
      codes[unique[i]] = static_cast<int>(i);
    }
    ds.class_labels = unique;
    ds.targets_class.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      ds.targets_class[r] = codes[raw_targets[r]];
    }
  }
  return ds;
}

void save_csv(const Dataset& ds, const std::string& path,
              const std::string& target_column) {
  std::ofstream out(path);
  if (!out) throw IoError("save_csv: cannot open " + path);
  for (const auto& name : ds.feature_names) out << name << ',';
  out << target_column << '\n';
  for (Eigen::Index r = 0; r < ds.n(); ++r) {
    for (Eigen::Index c = 0; c < ds.k(); ++c) {
      out << format_value(ds.features(r, c)) << ',';
    }
    if (ds.target_kind == TargetKind::regression) {
      out << format_value(ds.targets_real[r]);
    } else {
      const int code = ds.targets_class[static_cast<std::size_t>(r)];
      out << (ds.class_labels.empty() ? std::to_string(code)
                                      : ds.class_labels[code]);
    }
    out << '\n';
  }
}

std::vector<Dataset> split(const Dataset& ds, const SplitSpec& spec) {
  Eigen::Index total = 0;
  for (Eigen::Index c : spec.counts) {
    if (c < 0) throw InfeasibleSplit("split: negative partition size");
    total += c;
  }
  if (total != ds.n() || spec.counts.empty()) {
    throw InfeasibleSplit("split: partition sizes must sum to n");
  }

  std::vector<Eigen::Index> permutation(ds.n());
  std::iota(permutation.begin(), permutation.end(), 0);
  RandomStream rng(spec.master_seed);
  rng.shuffle(permutation);

  std::vector<Dataset> parts;
  Eigen::Index offset = 0;
  for (Eigen::Index count : spec.counts) {
    Dataset part;
    part.target_kind = ds.target_kind;
    part.feature_names = ds.feature_names;
    part.class_labels = ds.class_labels;
    part.features.resize(count, ds.k());
    if (ds.target_kind == TargetKind::regression) {
      part.targets_real.resize(count);
    } else {
      part.targets_class.resize(count);
    }
    for (Eigen::Index i = 0; i < count; ++i) {
      const Eigen::Index src = permutation[offset + i];
      part.features.row(i) = ds.features.row(src);
      if (ds.target_kind == TargetKind::regression) {
        part.targets_real[i] = ds.targets_real[src];
      } else {
        part.targets_class[i] = ds.targets_class[static_cast<std::size_t>(src)];
      }
    }
    offset += count;
    parts.push_back(std::move(part));
  }
  return parts;
}

namespace {

Dataset draw_sine(Eigen::Index n, double lo, double hi, const SineConfig& c,
                  RandomStream rng) {
  Dataset ds;
  ds.target_kind = TargetKind::regression;
  ds.feature_names = {"x"};
  ds.features.resize(n, 1);
  ds.targets_real.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = rng.uniform(lo, hi);
    double y = c.amplitude * std::sin(x);
    if (x >= c.noisy_lo && x <= c.noisy_hi && c.noise_sigma > 0.0) {
      y += rng.normal(0.0, c.noise_sigma);
    }
    ds.features(i, 0) = x;
    ds.targets_real[i] = y;
  }
  return ds;
}

}  // namespace

std::pair<Dataset, Dataset> synth_sine(const SineConfig& config) {
  if (!(config.train_lo < config.train_hi) || !(config.test_lo < config.test_hi) ||
      !(config.noisy_lo <= config.noisy_hi)) {
    throw InvalidDomain("synth_sine: domain bounds out of order");
  }
  if (config.noise_sigma < 0.0) {
    throw InvalidDomain("synth_sine: negative noise_sigma");
  }
  const RandomStream base(config.master_seed);
  Dataset train = draw_sine(config.n_train, config.train_lo, config.train_hi,
                            config, base.child(0));
  Dataset test = draw_sine(config.n_test, config.test_lo, config.test_hi,
                           config, base.child(1));
  return {std::move(train), std::move(test)};
}

Dataset synth_linear(const LinearConfig& config) {
  if (config.beta.size() < 2 || config.n < 2 || config.noise_sigma < 0.0) {
    throw InvalidConfig("synth_linear: need beta with intercept and n >= 2");
  }
  const Eigen::Index k = config.beta.size() - 1;
  const RandomStream base(config.master_seed);
  RandomStream design_rng = base.child(0);
  RandomStream noise_rng = base.child(1);

  Dataset ds;
  ds.target_kind = TargetKind::regression;
  for (Eigen::Index j = 0; j < k; ++j) {
    ds.feature_names.push_back("x" + std::to_string(j + 1));
  }
  ds.features.resize(config.n, k);
  for (Eigen::Index i = 0; i < config.n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      ds.features(i, j) = design_rng.normal();
    }
  }

  const double x0_min = ds.features.col(0).minCoeff();
  const double x0_span = ds.features.col(0).maxCoeff() - x0_min;
  ds.targets_real.resize(config.n);
  for (Eigen::Index i = 0; i < config.n; ++i) {
    double y = config.beta[0] + ds.features.row(i).dot(config.beta.tail(k));
    double sigma = config.noise_sigma;
    if (config.heteroscedastic && x0_span > 0.0) {
      const double position = (ds.features(i, 0) - x0_min) / x0_span;
      sigma *= 0.2 + 1.8 * position;  // low noise at the low end of feature 1
    }
    if (sigma > 0.0) y += noise_rng.normal(0.0, sigma);
    ds.targets_real[i] = y;
  }
  return ds;
}

Dataset synth_blobs(const BlobsConfig& config) {
  if (config.n < 2 || config.k < 1 || config.n_classes < 2 ||
      config.n_informative < 1 || config.n_informative > config.k) {
    throw InvalidConfig("synth_blobs: invalid configuration");
  }
  const RandomStream base(config.master_seed);
  RandomStream center_rng = base.child(0);
  RandomStream row_rng = base.child(1);

  Matrix centers(config.n_classes, config.n_informative);
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    for (Eigen::Index j = 0; j < centers.cols(); ++j) {
      centers(c, j) = center_rng.normal(0.0, config.center_spread);
    }
  }

  Dataset ds;
  ds.target_kind = TargetKind::classification;
  for (Eigen::Index j = 0; j < config.k; ++j) {
    ds.feature_names.push_back("f" + std::to_string(j));
  }
  for (int c = 0; c < config.n_classes; ++c) {
    ds.class_labels.push_back(std::to_string(c));
  }
  ds.features.resize(config.n, config.k);
  ds.targets_class.resize(static_cast<std::size_t>(config.n));
  for (Eigen::Index i = 0; i < config.n; ++i) {
    const int label = static_cast<int>(row_rng.uniform_index(config.n_classes));
    ds.targets_class[static_cast<std::size_t>(i)] = label;
    for (Eigen::Index j = 0; j < config.k; ++j) {
      const double center = j < config.n_informative ? centers(label, j) : 0.0;
      ds.features(i, j) = center + row_rng.normal(0.0, config.scatter);
    }
  }
  return ds;
}

}  // namespace uq
