#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "commands.hpp"
#include "qmimo/rng.hpp"

namespace qmimo::cli {

namespace {

struct Axis {
  std::string name;
  std::vector<double> values;
};

struct SweepConfig {
  std::string operation;
  std::string method;
  std::vector<Axis> axes;
  CommonArgs base;
  std::string format = "csv";
  std::string out_path;
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_array(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("sweep config: axis values must be [a, b, ...]");
  std::vector<double> out;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    size_t pos = 0;
    double v = std::stod(item, &pos);
    if (pos != item.size())
      throw std::invalid_argument("sweep config: bad numeric value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw std::invalid_argument("sweep config: axis must not be empty");
  return out;
}

void assign_scalar(CommonArgs& args, const std::string& key, double v) {
  if (key == "snr") args.snr = v;
  else if (key == "gamma") args.gamma = v;
  else if (key == "T") args.T = static_cast<int>(v);
  else if (key == "nt") args.nt = static_cast<int>(v);
  else if (key == "nr") args.nr = static_cast<int>(v);
  else if (key == "samples") args.samples = static_cast<uint64_t>(v);
  else if (key == "seed") args.seed = static_cast<uint64_t>(v);
  else
    throw std::invalid_argument("sweep config: unknown parameter '" + key + "'");
}

SweepConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("sweep config: cannot open " + path);
  SweepConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("sweep config: line " + std::to_string(line_no) +
                                  " is not key = value");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key == "operation") cfg.operation = value;
    else if (key == "method") cfg.method = value;
    else if (key == "format") cfg.format = value;
    else if (key == "out") cfg.out_path = value;
    else if (key.rfind("axis.", 0) == 0)
      cfg.axes.push_back({key.substr(5), parse_array(value)});
    else
      assign_scalar(cfg.base, key, std::stod(value));
  }
  if (cfg.operation.empty())
    throw std::invalid_argument("sweep config: missing operation");
  return cfg;
}

constexpr uint64_t kMaxGridCells = 100000;

}  // namespace

int run_sweep(const std::string& config_path, CommonArgs cli_args) {
  auto start = std::chrono::steady_clock::now();
  SweepConfig cfg = parse_config(config_path);
  if (!cli_args.output.out_path.empty()) cfg.out_path = cli_args.output.out_path;
  if (cli_args.output.format != "json") cfg.format = cli_args.output.format;
  cfg.base.method = cfg.method;

  uint64_t grid = cfg.axes.empty() ? 0 : 1;
  for (const Axis& a : cfg.axes) grid *= a.values.size();
  if (grid > kMaxGridCells)
    throw std::invalid_argument("sweep config: grid exceeds the cell budget");

  std::vector<Record> rows(grid);
  uint64_t op_stream = derive_seed(cfg.base.seed, hash_tag(cfg.operation));
  auto run_cell = [&](uint64_t idx) {
    CommonArgs cell = cfg.base;
    // odometer order, last axis fastest
    uint64_t rem = idx;
    std::vector<double> coords(cfg.axes.size());
    for (size_t a = cfg.axes.size(); a-- > 0;) {
      size_t n = cfg.axes[a].values.size();
      coords[a] = cfg.axes[a].values[rem % n];
      rem /= n;
    }
    Record row;
    for (size_t a = 0; a < cfg.axes.size(); ++a) {
      assign_scalar(cell, cfg.axes[a].name, coords[a]);
      row.emplace_back(cfg.axes[a].name, format_double(coords[a]));
    }
    cell.seed = derive_seed(op_stream, idx);
    row.emplace_back("operation", cfg.operation);
    if (!cfg.method.empty()) row.emplace_back("method", cfg.method);
    std::string value, std_err, error;
    try {
      OpResult res = evaluate_operation(cfg.operation, cell);
      value = format_double(res.value);
      std_err = format_double(res.std_err);
    } catch (const std::exception& e) {
      error = e.what();
    }
    row.emplace_back("value", value);
    row.emplace_back("std_err", std_err);
    row.emplace_back("seed", std::to_string(cell.seed));
    row.emplace_back("error", error);
    rows[idx] = std::move(row);
  };

  int workers = worker_count();
  if (workers <= 1 || grid <= 1) {
    for (uint64_t i = 0; i < grid; ++i) run_cell(i);
  } else {
    uint64_t w = std::min<uint64_t>(workers, grid);
    std::vector<std::thread> pool;
    for (uint64_t t = 0; t < w; ++t)
      pool.emplace_back([&, t] {
        for (uint64_t i = t; i < grid; i += w) run_cell(i);
      });
    for (auto& th : pool) th.join();
  }

  if (grid == 0) {
    // header-only output for an empty grid
    Record header;
    header.emplace_back("operation", cfg.operation);
    header.emplace_back("value", "");
    header.emplace_back("std_err", "");
    header.emplace_back("seed", "");
    header.emplace_back("error", "");
    rows.push_back(std::move(header));
    RunManifest m;
    m.operation = "sweep:" + cfg.operation;
    m.seed = cfg.base.seed;
    OutputOptions opt{cfg.format, cfg.out_path};
    // emit just the header row's keys, no data rows
    std::vector<Record> empty;
    Record& h = rows.back();
    if (cfg.format == "csv") {
      std::string line;
      for (size_t i = 0; i < h.size(); ++i) {
        if (i) line += ',';
        line += h[i].first;
      }
      line += ",manifest_id\r\n";
      if (cfg.out_path.empty()) {
        fputs(line.c_str(), stdout);
      } else {
        std::ofstream out(cfg.out_path, std::ios::binary);
        out << line;
      }
    } else {
      emit_records(empty, m, opt);
    }
    return 0;
  }

  RunManifest m;
  m.operation = "sweep:" + cfg.operation;
  for (const Axis& a : cfg.axes) {
    std::string vals;
    for (size_t i = 0; i < a.values.size(); ++i) {
      if (i) vals += ",";
      vals += format_double(a.values[i]);
    }
    m.params.emplace_back("axis." + a.name, vals);
  }
  if (!cfg.method.empty()) m.params.emplace_back("method", cfg.method);
  m.seed = cfg.base.seed;
  m.samples = resolve_samples(cfg.base.samples);
  m.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  OutputOptions opt{cfg.format, cfg.out_path};
  emit_records(rows, m, opt);
  return 0;
}

}  // namespace qmimo::cli
