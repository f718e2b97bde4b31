#include <fstream>
#include <string>
#include <vector>

#include "cli_common.hpp"
#include "uq/datasets.hpp"
#include "uq/linreg.hpp"
#include "uq/svg.hpp"

namespace uqcli {

namespace {

template <typename T>
T resolve(json& config, const std::string& key, T fallback) {
  if (!config.contains(key)) config[key] = fallback;
  return config[key].get<T>();
}

}  // namespace

// Fits a one-regressor line to synthetic data and tabulates prediction
// bands at two levels (1 - alpha and 1 - 2 * alpha) over an x grid.
// Scenarios vary the sample size and noise to show how the bands react.
int run_ols(json config) {
  const auto out_path = config.at("out").get<std::string>();
  const auto scenario = resolve<std::string>(config, "scenario", "base");
  const auto seed = resolve<std::uint64_t>(config, "seed", 0);
  const double alpha = resolve<double>(config, "alpha", 0.1);

  Eigen::Index default_n = 30;
  double default_sigma = 2.0;
  bool default_hetero = false;
  if (scenario == "few-obs") {
    default_n = 8;
  } else if (scenario == "noisy") {
    default_sigma = 6.0;
  } else if (scenario == "heteroscedastic") {
    default_hetero = true;
  } else if (scenario != "base") {
    throw uq::InvalidConfig("ols: unknown scenario " + scenario);
  }

  uq::LinearConfig gen;
  gen.n = resolve<Eigen::Index>(config, "n", default_n);
  const auto beta = resolve<std::vector<double>>(config, "beta", {5.0, 0.3});
  gen.beta = Eigen::Map<const uq::Vector>(beta.data(),
                                          static_cast<Eigen::Index>(beta.size()));
  gen.noise_sigma = resolve<double>(config, "noise_sigma", default_sigma);
  gen.heteroscedastic = resolve<bool>(config, "heteroscedastic", default_hetero);
  gen.master_seed = seed;
  const int grid_points = resolve<int>(config, "grid_points", 100);

  OutputDir out(out_path);
  try {
    const auto ds = uq::synth_linear(gen);
    const auto fit = uq::fit_ols(ds.features, ds.targets_real);

    {
      std::ofstream coeffs(out.file("coefficients.csv"));
      coeffs << "term,value\n";
      coeffs << "intercept," << g17(fit.coefficients[0]) << '\n';
      for (Eigen::Index j = 1; j < fit.coefficients.size(); ++j) {
        coeffs << "slope_" << j << ',' << g17(fit.coefficients[j]) << '\n';
      }
      coeffs << "residual_variance," << g17(fit.residual_variance) << '\n';
      coeffs << "df," << fit.df << '\n';
    }

    std::vector<std::vector<double>> obs_rows;
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
      obs_rows.push_back({ds.features(i, 0), ds.targets_real[i]});
    }
    write_csv(out.file("observations.csv"), {"x", "y"}, obs_rows);

    const double lo = ds.features.col(0).minCoeff();
    const double hi = ds.features.col(0).maxCoeff();
    std::vector<std::vector<double>> grid_rows;
    std::vector<double> gx, gpoint, glow, ghigh;
    double width_wide = 0.0, width_narrow = 0.0;
    for (int g = 0; g < grid_points; ++g) {
      uq::Vector x_h(ds.k());
      x_h.setZero();
      x_h[0] = lo + (hi - lo) * g / (grid_points - 1.0);
      const auto wide = uq::predict_interval(fit, x_h, alpha);
      const auto narrow = uq::predict_interval(fit, x_h, 2.0 * alpha);
      grid_rows.push_back({x_h[0], wide.point, wide.lower, wide.upper,
                           narrow.lower, narrow.upper});
      width_wide += wide.upper - wide.lower;
      width_narrow += narrow.upper - narrow.lower;
      gx.push_back(x_h[0]);
      gpoint.push_back(wide.point);
      glow.push_back(wide.lower);
      ghigh.push_back(wide.upper);
    }
    write_csv(out.file("intervals.csv"),
              {"x", "point", "lower_wide", "upper_wide", "lower_narrow",
               "upper_narrow"},
              grid_rows);
    write_csv(out.file("summary.csv"),
              {"mean_width_wide", "mean_width_narrow"},
              {{width_wide / grid_points, width_narrow / grid_points}});

    uq::SvgChart chart("prediction intervals (" + scenario + ")", "x", "y");
    std::vector<double> px, py;
    for (const auto& row : obs_rows) {
      px.push_back(row[0]);
      py.push_back(row[1]);
    }
    chart.add_points(px, py, "#444444", "data");
    chart.add_line(gx, gpoint, "#1f77b4", "fit");
    chart.add_line(gx, glow, "#d62728", "lower");
    chart.add_line(gx, ghigh, "#d62728", "upper");
    chart.write(out.file("fit.svg"));

    write_manifest(out, "ols", config);
  } catch (...) {
    out.discard();
    throw;
  }
  return 0;
}

}  // namespace uqcli
