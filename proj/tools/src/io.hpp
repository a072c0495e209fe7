#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mixar::cli {

inline constexpr int kSchemaVersion = 1;

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// Round-trip decimal form; "nan" / "inf" / "-inf" for non-finite values.
std::string num(double v);

/// Writes to a file, or to `out` when path is "-".
void write_text(const std::string& path, const std::string& content, std::ostream& out);

std::string read_text(const std::string& path);

struct Manifest {
  std::string command;
  std::vector<std::pair<std::string, std::vector<std::string>>> flags;
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

/// "<output>.manifest.json", or empty for stdout.
std::string manifest_path_for(const std::string& output);

void write_manifest(const Manifest& manifest, const std::string& path);

}  // namespace mixar::cli
