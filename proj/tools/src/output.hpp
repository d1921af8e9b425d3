#pragma once

// Record emission (CSV / JSON) and run manifests for the command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qmimo::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Ordered key-value record; all values pre-rendered as strings.
using Record = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v);  // 12 significant digits

struct RunManifest {
  std::string operation;
  std::vector<std::pair<std::string, std::string>> params;
  uint64_t seed = 0;
  uint64_t samples = 0;
  std::string version = kToolVersion;
  double wall_ms = 0.0;
  std::string outputs_digest;

  // stable across reruns: hashes operation, params, seed, samples, version
  std::string id() const;
  std::string to_json() const;
};

std::string digest_hex(const std::string& payload);

struct OutputOptions {
  std::string format = "json";  // json | csv
  std::string out_path;         // empty -> stdout
};

// Renders records (with the manifest id attached to each) and writes them;
// when writing to a file, the manifest lands next to it as <out>.manifest.json.
void emit_records(const std::vector<Record>& records, RunManifest& manifest,
                  const OutputOptions& options);

}  // namespace qmimo::cli
