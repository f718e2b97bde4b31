#include <fstream>
#include <string>
#include <vector>

#include "cli_common.hpp"
#include "uq/conformal.hpp"
#include "uq/datasets.hpp"
#include "uq/forest.hpp"
#include "uq/svg.hpp"

namespace uqcli {

namespace {

template <typename T>
T resolve(json& config, const std::string& key, T fallback) {
  if (!config.contains(key)) config[key] = fallback;
  return config[key].get<T>();
}

uq::Vector mean_softmax(const uq::RandomForest& forest, const uq::Vector& x_h) {
  const auto members = uq::forest_predict_proba(forest, x_h);
  uq::Vector mean = uq::Vector::Zero(members.front().values().size());
  for (const auto& m : members) mean += m.values();
  return mean / static_cast<double>(members.size());
}

}  // namespace

// Split-conformal classification: trains a shallow forest, calibrates the
// score quantile on a held-out set, and emits prediction sets plus their
// empirical coverage on a test set.
int run_conformal(json config) {
  const auto out_path = config.at("out").get<std::string>();
  const auto seed = resolve<std::uint64_t>(config, "seed", 0);
  const double alpha = resolve<double>(config, "alpha", 0.2);
  const auto data_path = resolve<std::string>(config, "data", "");
  const auto target_column = resolve<std::string>(config, "target", "target");
  const auto counts =
      resolve<std::vector<Eigen::Index>>(config, "splits", {6400, 1600, 2000});
  if (counts.size() != 3) {
    throw uq::InvalidConfig("conformal: splits must be [train, cal, test]");
  }

  uq::ForestConfig forest_config;
  forest_config.trees_count = resolve<int>(config, "trees", 100);
  forest_config.max_depth = resolve<int>(config, "depth", 2);
  forest_config.master_seed = seed;

  uq::Dataset ds;
  if (!data_path.empty()) {
    ds = uq::load_csv(data_path, target_column, uq::TargetKind::classification);
  } else {
    // Desk-scale stand-in with covertype-like shape: 54 features of which
    // 10 carry signal, 7 overlapping classes.
    uq::BlobsConfig blobs;
    blobs.n = resolve<Eigen::Index>(config, "synth_n", 10000);
    blobs.k = resolve<Eigen::Index>(config, "synth_k", 54);
    blobs.n_informative = resolve<Eigen::Index>(config, "synth_informative", 10);
    blobs.n_classes = resolve<int>(config, "synth_classes", 7);
    blobs.master_seed = seed;
    ds = uq::synth_blobs(blobs);
  }
  if (counts[0] + counts[1] + counts[2] > ds.n()) {
    throw uq::InvalidConfig("conformal: splits larger than dataset");
  }

  uq::SplitSpec spec;
  spec.counts = counts;
  const Eigen::Index rest = ds.n() - counts[0] - counts[1] - counts[2];
  if (rest > 0) spec.counts.push_back(rest);
  spec.master_seed = seed;

  OutputDir out(out_path);
  try {
    const auto parts = uq::split(ds, spec);
    const auto& train = parts[0];
    const auto& cal_set = parts[1];
    const auto& test = parts[2];

    const auto forest = uq::train_forest(train.features, train.targets_class,
                                         forest_config);

    uq::Vector scores(cal_set.n());
    for (Eigen::Index i = 0; i < cal_set.n(); ++i) {
      const uq::Vector probs =
          mean_softmax(forest, cal_set.features.row(i).transpose());
      scores[i] = 1.0 - probs[cal_set.targets_class[i]];
    }
    const auto cal = uq::calibrate(scores, alpha, uq::ScoreKind::classification);
    uq::save_calibration(cal, out.file("calibration.json"));
    write_csv(out.file("calibration.csv"), {"alpha", "n", "k", "q_hat"},
              {{cal.alpha, static_cast<double>(cal.n),
                static_cast<double>(cal.k), cal.q_hat}});

    std::vector<uq::PredictionSet> sets;
    std::vector<int> truths;
    std::vector<std::size_t> size_histogram(
        static_cast<std::size_t>(forest.n_classes) + 1, 0);
    std::ofstream sets_csv(out.file("sets.csv"));
    sets_csv << "index,truth,set_size,covered,set\n";
    for (Eigen::Index i = 0; i < test.n(); ++i) {
      const uq::Vector probs =
          mean_softmax(forest, test.features.row(i).transpose());
      const auto set = uq::predict_set(probs, cal);
      const int truth = test.targets_class[i];
      size_histogram[set.class_indices.size()] += 1;
      sets_csv << i << ',' << truth << ',' << set.class_indices.size() << ','
               << (set.contains(truth) ? 1 : 0) << ',';
      for (std::size_t c = 0; c < set.class_indices.size(); ++c) {
        sets_csv << set.class_indices[c]
                 << (c + 1 < set.class_indices.size() ? "|" : "");
      }
      sets_csv << '\n';
      sets.push_back(set);
      truths.push_back(truth);
    }
    sets_csv.close();

    const double coverage = uq::empirical_coverage(sets, truths);
    double mean_size = 0.0;
    for (const auto& s : sets) mean_size += static_cast<double>(s.class_indices.size());
    mean_size /= static_cast<double>(sets.size());
    write_csv(out.file("coverage.csv"),
              {"empirical_coverage", "target_coverage", "mean_set_size"},
              {{coverage, 1.0 - alpha, mean_size}});

    std::vector<std::vector<double>> hist_rows;
    std::vector<double> hx, hy;
    for (std::size_t s = 0; s < size_histogram.size(); ++s) {
      hist_rows.push_back({static_cast<double>(s),
                           static_cast<double>(size_histogram[s])});
      hx.push_back(static_cast<double>(s));
      hy.push_back(static_cast<double>(size_histogram[s]));
    }
    write_csv(out.file("set_size_hist.csv"), {"set_size", "count"}, hist_rows);

    uq::SvgChart hist("prediction set sizes", "set size", "count");
    hist.add_points(hx, hy, "#1f77b4", "count");
    hist.add_line(hx, hy, "#1f77b4", "");
    hist.write(out.file("set_size_hist.svg"));

    write_manifest(out, "conformal", config);
  } catch (...) {
    out.discard();
    throw;
  }
  return 0;
}

}  // namespace uqcli
