#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "cli_common.hpp"
#include "uq/bnn.hpp"
#include "uq/datasets.hpp"
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

// Trains an MC-dropout network on a noisy sinusoid, reports per-test-point
// uncertainty (epistemic from pass disagreement, aleatoric from the learned
// noise head) and RMSE-rejection curves for each uncertainty notion.
int run_bnn(json config) {
  const auto out_path = config.at("out").get<std::string>();
  const auto seed = resolve<std::uint64_t>(config, "seed", 0);

  uq::SineConfig sine;
  sine.n_train = resolve<Eigen::Index>(config, "n_train", 200);
  sine.n_test = resolve<Eigen::Index>(config, "n_test", 100);
  sine.noise_sigma = resolve<double>(config, "noise_sigma", 0.3);
  sine.amplitude = resolve<double>(config, "amplitude", 1.0);
  sine.master_seed = seed;

  uq::MlpConfig mlp;
  const auto hidden = resolve<std::vector<int>>(config, "hidden", {48, 48});
  mlp.layer_sizes = {1};
  mlp.layer_sizes.insert(mlp.layer_sizes.end(), hidden.begin(), hidden.end());
  mlp.layer_sizes.push_back(2);
  mlp.dropout_rate = resolve<double>(config, "dropout_rate", 0.1);
  mlp.l2_weight = resolve<double>(config, "l2_weight", 1e-5);
  mlp.learning_rate = resolve<double>(config, "learning_rate", 0.001);
  mlp.momentum = resolve<double>(config, "momentum", 0.9);
  mlp.epochs = resolve<int>(config, "epochs", 1000);
  mlp.batch_size = resolve<int>(config, "batch_size", 32);
  mlp.mc_passes = resolve<int>(config, "mc_passes", 50);
  mlp.master_seed = seed;

  OutputDir out(out_path);
  try {
    const auto [train, test] = uq::synth_sine(sine);

    std::vector<std::pair<int, double>> training_log;
    const auto net = uq::train(train.features, train.targets_real, mlp,
                               &training_log);
    write_csv(out.file("training_log.csv"), {"epoch", "loss"}, [&] {
      std::vector<std::vector<double>> rows;
      for (const auto& [epoch, loss] : training_log) {
        rows.push_back({static_cast<double>(epoch), loss});
      }
      return rows;
    }());

    // x-sorted test rows keep the fit chart a single left-to-right sweep.
    std::vector<Eigen::Index> order(test.n());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return test.features(a, 0) < test.features(b, 0);
    });

    std::vector<double> epistemic, aleatoric, total, preds, truths;
    std::vector<double> xs, means, uppers, lowers;
    std::vector<std::vector<double>> table;
    for (Eigen::Index idx : order) {
      const uq::Vector x_h = test.features.row(idx).transpose();
      const auto p = uq::mc_predict(net, x_h, mlp);
      table.push_back({test.features(idx, 0), test.targets_real[idx], p.mean,
                       p.epistemic_var, p.aleatoric_var, p.total_var});
      xs.push_back(test.features(idx, 0));
      means.push_back(p.mean);
      uppers.push_back(p.mean + 2.0 * std::sqrt(p.total_var));
      lowers.push_back(p.mean - 2.0 * std::sqrt(p.total_var));
      epistemic.push_back(p.epistemic_var);
      aleatoric.push_back(p.aleatoric_var);
      total.push_back(p.total_var);
      preds.push_back(p.mean);
      truths.push_back(test.targets_real[idx]);
    }
    write_csv(out.file("predictions.csv"),
              {"x", "truth", "mean", "epistemic_var", "aleatoric_var",
               "total_var"},
              table);

    uq::SvgChart fit("MC-dropout fit", "x", "y");
    fit.add_points(xs, truths, "#444444", "truth");
    fit.add_line(xs, means, "#1f77b4", "mean");
    fit.add_line(xs, lowers, "#d62728", "-2 sd");
    fit.add_line(xs, uppers, "#d62728", "+2 sd");
    fit.write(out.file("fit.svg"));

    const auto curve_total =
        uq::rejection_curve(total, preds, truths, uq::MetricKind::rmse);
    const auto curve_aleatoric =
        uq::rejection_curve(aleatoric, preds, truths, uq::MetricKind::rmse);
    const auto curve_epistemic =
        uq::rejection_curve(epistemic, preds, truths, uq::MetricKind::rmse);
    std::vector<std::vector<double>> rows;
    std::vector<double> fx, r_total, r_alea, r_epi;
    for (std::size_t r = 0; r < curve_total.points.size(); ++r) {
      rows.push_back({curve_total.points[r].rejected_fraction,
                      curve_total.points[r].metric_value,
                      curve_total.points[r].uncertainty_threshold,
                      curve_aleatoric.points[r].metric_value,
                      curve_aleatoric.points[r].uncertainty_threshold,
                      curve_epistemic.points[r].metric_value,
                      curve_epistemic.points[r].uncertainty_threshold});
      fx.push_back(curve_total.points[r].rejected_fraction);
      r_total.push_back(curve_total.points[r].metric_value);
      r_alea.push_back(curve_aleatoric.points[r].metric_value);
      r_epi.push_back(curve_epistemic.points[r].metric_value);
    }
    write_csv(out.file("rejection.csv"),
              {"rejected_fraction", "rmse_total", "threshold_total",
               "rmse_aleatoric", "threshold_aleatoric", "rmse_epistemic",
               "threshold_epistemic"},
              rows);

    uq::SvgChart rej("RMSE-rejection curves", "rejected fraction", "RMSE");
    rej.add_line(fx, r_total, "#1f77b4", "total");
    rej.add_line(fx, r_alea, "#2ca02c", "aleatoric");
    rej.add_line(fx, r_epi, "#d62728", "epistemic");
    rej.write(out.file("rejection.svg"));

    uq::save_mlp(net, out.file("model.json"));
    write_manifest(out, "bnn", config);
  } catch (...) {
    out.discard();
    throw;
  }
  return 0;
}

}  // namespace uqcli
