#include "io.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "mixar/error.hpp"

namespace mixar::cli {

std::string sha256_file(const std::string& path) {
  const std::string data = read_text(path);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::Io, "sha256 failed for " + path);
  }
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path);
  f << content;
  if (!f) throw Error(ErrorKind::Io, "write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string manifest_path_for(const std::string& output) {
  if (output.empty() || output == "-") return {};
  return output + ".manifest.json";
}

void write_manifest(const Manifest& m, const std::string& path) {
  if (path.empty()) return;
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = m.command;
  nlohmann::ordered_json flags = nlohmann::ordered_json::object();
  for (const auto& [name, values] : m.flags) {
    if (values.size() == 1) flags[name] = values.front();
    else flags[name] = values;
  }
  j["flags"] = flags;
  j["seed"] = m.seed;
  j["library_version"] = MIXAR_VERSION;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
  for (const auto& p : m.inputs) inputs.push_back({{"path", p}, {"sha256", sha256_file(p)}});
  j["inputs"] = inputs;
  j["outputs"] = m.outputs;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  j["created"] = stamp;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path);
  f << j.dump(2) << '\n';
}

}  // namespace mixar::cli
