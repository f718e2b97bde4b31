#include <cmath>
#include <string>
#include <vector>

#include "cli_common.hpp"
#include "uq/datasets.hpp"
#include "uq/forest.hpp"
#include "uq/infotheory.hpp"
#include "uq/selective.hpp"
#include "uq/svg.hpp"

namespace uqcli {

namespace {

template <typename T>
T resolve(json& config, const std::string& key, T fallback) {
  if (!config.contains(key)) config[key] = fallback;
  return config[key].get<T>();
}

}  // namespace

// Trains a shallow forest, decomposes each test point's predictive entropy
// into aleatoric and epistemic parts, and tabulates accuracy-rejection
// curves for all three uncertainty notions.
int run_forest_uq(json config) {
  const auto out_path = config.at("out").get<std::string>();
  const auto seed = resolve<std::uint64_t>(config, "seed", 0);
  const auto data_path = resolve<std::string>(config, "data", "");
  const auto target_column = resolve<std::string>(config, "target", "target");
  const auto train_count = resolve<Eigen::Index>(config, "train_count", 30);
  const auto test_count = resolve<Eigen::Index>(config, "test_count", 120);

  uq::ForestConfig forest_config;
  forest_config.trees_count = resolve<int>(config, "trees", 100);
  forest_config.max_depth = resolve<int>(config, "depth", 2);
  forest_config.features_per_split = resolve<int>(config, "features_per_split", 0);
  forest_config.master_seed = seed;

  const auto base_name = resolve<std::string>(config, "log_base", "two");
  if (base_name != "two" && base_name != "e") {
    throw uq::InvalidConfig("forest-uq: log_base must be 'two' or 'e'");
  }
  const auto log_base = base_name == "two" ? uq::LogBase::two : uq::LogBase::e;

  uq::Dataset ds;
  if (!data_path.empty()) {
    ds = uq::load_csv(data_path, target_column, uq::TargetKind::classification);
  } else {
    uq::BlobsConfig blobs;
    blobs.n = resolve<Eigen::Index>(config, "synth_n", 150);
    blobs.k = resolve<Eigen::Index>(config, "synth_k", 4);
    blobs.n_informative = blobs.k;
    blobs.n_classes = resolve<int>(config, "synth_classes", 3);
    blobs.master_seed = seed;
    ds = uq::synth_blobs(blobs);
  }
  if (train_count + test_count > ds.n()) {
    throw uq::InvalidConfig("forest-uq: split larger than dataset");
  }

  uq::SplitSpec spec;
  spec.counts = {train_count, test_count, ds.n() - train_count - test_count};
  if (spec.counts.back() == 0) spec.counts.pop_back();
  spec.master_seed = seed;

  OutputDir out(out_path);
  try {
    const auto parts = uq::split(ds, spec);
    const auto& train = parts[0];
    const auto& test = parts[1];
    const auto forest = uq::train_forest(train.features, train.targets_class,
                                         forest_config);

    std::vector<double> total(test.n()), aleatoric(test.n()), epistemic(test.n());
    std::vector<double> predictions(test.n()), truths(test.n());
    std::vector<std::vector<double>> table;
    for (Eigen::Index i = 0; i < test.n(); ++i) {
      const uq::Vector x_h = test.features.row(i).transpose();
      const auto members = uq::forest_predict_proba(forest, x_h);
      const auto d = uq::decompose(members, log_base);
      total[i] = d.total;
      aleatoric[i] = d.aleatoric;
      epistemic[i] = d.epistemic;
      predictions[i] = uq::forest_predict(forest, x_h, uq::VoteMode::soft);
      truths[i] = test.targets_class[i];
      table.push_back({static_cast<double>(i), truths[i], predictions[i],
                       d.total, d.aleatoric, d.epistemic});
    }
    write_csv(out.file("uncertainty.csv"),
              {"index", "truth", "prediction", "total", "aleatoric", "epistemic"},
              table);

    const auto curve_total = uq::rejection_curve(total, predictions, truths,
                                                 uq::MetricKind::accuracy);
    const auto curve_aleatoric = uq::rejection_curve(
        aleatoric, predictions, truths, uq::MetricKind::accuracy);
    const auto curve_epistemic = uq::rejection_curve(
        epistemic, predictions, truths, uq::MetricKind::accuracy);

    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < curve_total.points.size(); ++r) {
      rows.push_back({curve_total.points[r].rejected_fraction,
                      curve_total.points[r].metric_value,
                      curve_total.points[r].uncertainty_threshold,
                      curve_aleatoric.points[r].metric_value,
                      curve_aleatoric.points[r].uncertainty_threshold,
                      curve_epistemic.points[r].metric_value,
                      curve_epistemic.points[r].uncertainty_threshold});
    }
    write_csv(out.file("rejection.csv"),
              {"rejected_fraction", "accuracy_total", "threshold_total",
               "accuracy_aleatoric", "threshold_aleatoric",
               "accuracy_epistemic", "threshold_epistemic"},
              rows);

    uq::SvgChart chart("accuracy-rejection curves", "rejected fraction",
                       "accuracy");
    std::vector<double> fx, a_total, a_alea, a_epi, thr;
    for (std::size_t r = 0; r < curve_total.points.size(); ++r) {
      fx.push_back(curve_total.points[r].rejected_fraction);
      a_total.push_back(curve_total.points[r].metric_value);
      a_alea.push_back(curve_aleatoric.points[r].metric_value);
      a_epi.push_back(curve_epistemic.points[r].metric_value);
      if (r > 0) thr.push_back(curve_total.points[r].uncertainty_threshold);
    }
    chart.add_line(fx, a_total, "#1f77b4", "total");
    chart.add_line(fx, a_alea, "#2ca02c", "aleatoric");
    chart.add_line(fx, a_epi, "#d62728", "epistemic");
    chart.add_line_secondary(std::vector<double>(fx.begin() + 1, fx.end()), thr,
                             "#888888", "threshold (total)");
    chart.write(out.file("rejection.svg"));

    write_manifest(out, "forest-uq", config);
  } catch (...) {
    out.discard();
    throw;
  }
  return 0;
}

}  // namespace uqcli
