#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qmimo/rng.hpp"

namespace qmimo::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string digest_hex(const std::string& payload) {
  uint64_t h = hash_tag(payload);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunManifest::id() const {
  std::ostringstream os;
  os << operation << '\n';
  for (const auto& [k, v] : params) os << k << '=' << v << '\n';
  os << "seed=" << seed << "\nsamples=" << samples << "\nversion=" << version;
  return digest_hex(os.str());
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["manifest_id"] = id();
  j["operation"] = operation;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  j["seed"] = seed;
  j["samples"] = samples;
  j["version"] = version;
  j["wall_ms"] = wall_ms;
  j["outputs_digest"] = outputs_digest;
  return j.dump(2);
}

namespace {

std::string csv_escape(const std::string& s) {
  bool needs_quotes = s.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string render_csv(const std::vector<Record>& records) {
  std::ostringstream os;
  if (records.empty()) return os.str();
  const Record& head = records.front();
  for (size_t i = 0; i < head.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(head[i].first);
  }
  os << "\r\n";
  for (const Record& r : records) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      os << csv_escape(r[i].second);
    }
    os << "\r\n";
  }
  return os.str();
}

std::string render_json(const std::vector<Record>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Record& r : records) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r) obj[k] = v;
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

}  // namespace

void emit_records(const std::vector<Record>& records, RunManifest& manifest,
                  const OutputOptions& options) {
  std::vector<Record> tagged = records;
  std::string id = manifest.id();
  for (Record& r : tagged) r.emplace_back("manifest_id", id);

  std::string body =
      options.format == "csv" ? render_csv(tagged) : render_json(tagged);
  manifest.outputs_digest = digest_hex(body);

  if (options.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(options.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + options.out_path);
    out << body;
    std::ofstream mf(options.out_path + ".manifest.json", std::ios::binary);
    mf << manifest.to_json() << "\n";
  }
}

}  // namespace qmimo::cli
