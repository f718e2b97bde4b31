#include <string>
#include <vector>

#include "cli_common.hpp"
#include "uq/datasets.hpp"

namespace uqcli {

namespace {

template <typename T>
T resolve(json& config, const std::string& key, T fallback) {
  if (!config.contains(key)) config[key] = fallback;
  return config[key].get<T>();
}

}  // namespace

// Writes one of the synthetic datasets (sine regression, linear regression,
// Gaussian class blobs) to CSV so other subcommands or external tools can
// consume a frozen copy.
int run_synth(json config) {
  const auto out_path = config.at("out").get<std::string>();
  const auto kind = resolve<std::string>(config, "kind", "sine");
  const auto seed = resolve<std::uint64_t>(config, "seed", 0);

  OutputDir out(out_path);
  try {
    if (kind == "sine") {
      uq::SineConfig sine;
      sine.n_train = resolve<Eigen::Index>(config, "n_train", 200);
      sine.n_test = resolve<Eigen::Index>(config, "n_test", 100);
      sine.noise_sigma = resolve<double>(config, "noise_sigma", 0.3);
      sine.amplitude = resolve<double>(config, "amplitude", 1.0);
      sine.master_seed = seed;
      const auto [train, test] = uq::synth_sine(sine);
      uq::save_csv(train, out.file("train.csv"));
      uq::save_csv(test, out.file("test.csv"));
    } else if (kind == "linear") {
      uq::LinearConfig linear;
      linear.n = resolve<Eigen::Index>(config, "n", 100);
      const auto beta = resolve<std::vector<double>>(config, "beta", {5.0, 0.3});
      linear.beta = Eigen::Map<const uq::Vector>(
          beta.data(), static_cast<Eigen::Index>(beta.size()));
      linear.noise_sigma = resolve<double>(config, "noise_sigma", 1.0);
      linear.heteroscedastic = resolve<bool>(config, "heteroscedastic", false);
      linear.master_seed = seed;
      uq::save_csv(uq::synth_linear(linear), out.file("data.csv"));
    } else if (kind == "blobs") {
      uq::BlobsConfig blobs;
      blobs.n = resolve<Eigen::Index>(config, "n", 1000);
      blobs.k = resolve<Eigen::Index>(config, "k", 10);
      blobs.n_informative = resolve<Eigen::Index>(config, "n_informative", blobs.k);
      blobs.n_classes = resolve<int>(config, "n_classes", 3);
      blobs.center_spread = resolve<double>(config, "center_spread", 2.0);
      blobs.scatter = resolve<double>(config, "scatter", 1.5);
      blobs.master_seed = seed;
      uq::save_csv(uq::synth_blobs(blobs), out.file("data.csv"));
    } else {
      throw uq::InvalidConfig("synth: kind must be sine, linear, or blobs");
    }
    write_manifest(out, "synth", config);
  } catch (...) {
    out.discard();
    throw;
  }
  return 0;
}

}  // namespace uqcli
