#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uq/errors.hpp"

namespace uqcli {

using json = nlohmann::ordered_json;

// Registers every artifact it hands out so a failed run can remove its
// partial outputs before exiting nonzero.
class OutputDir {
 public:
  explicit OutputDir(const std::string& path) : dir_(path) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw uq::IoError("cannot create output directory " + path);
  }

  std::string file(const std::string& name) {
    const auto path = dir_ / name;
    written_.push_back(path);
    return path.string();
  }

  void discard() {
    std::error_code ec;
    for (const auto& path : written_) std::filesystem::remove(path, ec);
    written_.clear();
    if (std::filesystem::is_empty(dir_, ec) && !ec) {
      std::filesystem::remove(dir_, ec);
    }
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

inline std::string g17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

inline void write_csv(const std::string& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw uq::IoError("cannot open " + path);
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << header[c] << (c + 1 < header.size() ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << g17(row[c]) << (c + 1 < row.size() ? "," : "\n");
    }
  }
}

inline json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw uq::IoError("cannot open config " + path);
  return json::parse(in);
}

// The manifest doubles as a config file: feeding it back through --config
// reproduces the run because every default is materialized.
inline void write_manifest(OutputDir& out, const std::string& subcommand,
                           const json& resolved) {
  json manifest = resolved;
  manifest["subcommand"] = subcommand;
  std::ofstream stream(out.file("manifest.json"));
  stream << manifest.dump(2) << '\n';
}

int run_ols(json config);
int run_forest_uq(json config);
int run_bnn(json config);
int run_conformal(json config);
int run_synth(json config);
int run_fetch(json config);

}  // namespace uqcli
