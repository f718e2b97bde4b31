#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <zlib.h>

#include "cli_common.hpp"

namespace uqcli {

namespace {

template <typename T>
T resolve(json& config, const std::string& key, T fallback) {
  if (!config.contains(key)) config[key] = fallback;
  return config[key].get<T>();
}

std::string gunzip(const std::string& compressed) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
    throw uq::IoError("fetch-covertype: zlib init failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());

  std::string result;
  char buffer[1 << 16];
  int status = Z_OK;
  while (status == Z_OK) {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof(buffer);
    status = inflate(&zs, Z_NO_FLUSH);
    if (status != Z_OK && status != Z_STREAM_END) {
      inflateEnd(&zs);
      throw uq::IoError("fetch-covertype: corrupt gzip payload");
    }
    result.append(buffer, sizeof(buffer) - zs.avail_out);
  }
  inflateEnd(&zs);
  return result;
}

}  // namespace

// Downloads the public covertype archive and re-exports it as a headered
// CSV that the other subcommands can load. Network access is optional for
// everything else; this command fails with a nonzero exit when offline.
int run_fetch(json config) {
  const auto out_path = config.at("out").get<std::string>();
  const auto url = resolve<std::string>(
      config, "url",
      "https://archive.ics.uci.edu/ml/machine-learning-databases/covtype/"
      "covtype.data.gz");

  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw uq::InvalidConfig("fetch-covertype: url must include a scheme");
  }
  const auto host_start = scheme_end + 3;
  const auto path_start = url.find('/', host_start);
  const std::string origin = url.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/" : url.substr(path_start);

  OutputDir out(out_path);
  try {
    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    const auto response = client.Get(path);
    if (!response || response->status != 200) {
      throw uq::IoError("fetch-covertype: download failed for " + url);
    }

    std::string body = response->body;
    if (url.size() > 3 && url.compare(url.size() - 3, 3, ".gz") == 0) {
      body = gunzip(body);
    }

    std::ofstream csv(out.file("covtype.csv"));
    for (int c = 1; c <= 54; ++c) csv << 'x' << c << ',';
    csv << "target\n";
    csv << body;
    if (!body.empty() && body.back() != '\n') csv << '\n';

    write_manifest(out, "fetch-covertype", config);
  } catch (...) {
    out.discard();
    throw;
  }
  return 0;
}

}  // namespace uqcli
