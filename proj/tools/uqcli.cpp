#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "cli_common.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  bool seed_given = false;
  bool alpha_given = false;
};

void attach_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--seed", flags.seed, "master seed override")
      ->trigger_on_parse()
      ->each([&flags](const std::string&) { flags.seed_given = true; });
  cmd->add_option("--alpha", flags.alpha, "miscoverage level override")
      ->trigger_on_parse()
      ->each([&flags](const std::string&) { flags.alpha_given = true; });
}

// Flags win over config-file values.
uqcli::json merged(const CommonFlags& flags) {
  auto config = uqcli::load_config(flags.config_path);
  config.erase("subcommand");  // allows a manifest to be replayed as config
  if (!flags.out_dir.empty()) config["out"] = flags.out_dir;
  if (flags.seed_given) config["seed"] = flags.seed;
  if (flags.alpha_given) config["alpha"] = flags.alpha;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uncertainty toolkit"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    std::function<int(uqcli::json)> run;
  };
  const Entry entries[] = {
      {"ols", "linear-regression prediction intervals", uqcli::run_ols},
      {"forest-uq", "forest entropy decomposition and rejection curves",
       uqcli::run_forest_uq},
      {"bnn", "MC-dropout regression with loss attenuation", uqcli::run_bnn},
      {"conformal", "split-conformal prediction sets", uqcli::run_conformal},
      {"synth", "synthetic dataset generation", uqcli::run_synth},
      {"fetch-covertype", "download the covertype CSV", uqcli::run_fetch},
  };

  CommonFlags flags[std::size(entries)];
  for (std::size_t i = 0; i < std::size(entries); ++i) {
    auto* cmd = app.add_subcommand(entries[i].name, entries[i].help);
    attach_common(cmd, flags[i]);
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < std::size(entries); ++i) {
    if (!app.get_subcommand(entries[i].name)->parsed()) continue;
    try {
      return entries[i].run(merged(flags[i]));
    } catch (const std::exception& e) {
      std::fprintf(stderr, "%s: %s\n", entries[i].name, e.what());
      return 1;
    }
  }
  return 1;
}
