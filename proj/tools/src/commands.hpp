#pragma once

// Command implementations behind the CLI front end.

#include <cstdint>
#include <string>

#include "output.hpp"

namespace qmimo::cli {

struct CommonArgs {
  double snr = -1.0;   // negative = unset
  double gamma = -1.0;
  int T = 0;
  int nt = 0;
  int nr = 0;
  uint64_t samples = 0;  // 0 = env default
  uint64_t seed = 20260823;
  std::string method;
  OutputOptions output;
};

uint64_t default_samples();
uint64_t resolve_samples(uint64_t requested);

// returns process exit code
int run_capacity_coherent(CommonArgs args);
int run_capacity_noncoherent(CommonArgs args);
int run_bounds(CommonArgs args);
int run_volume(CommonArgs args);
int run_simulate(CommonArgs args);
int run_validate(const std::string& suite, CommonArgs args);
int run_sweep(const std::string& config_path, CommonArgs args);

struct OpResult {
  double value = 0.0;
  double std_err = 0.0;
};

// Shared evaluator used by sweep cells. Operations: capacity-coherent,
// capacity-coherent-spherical, capacity-noncoherent-exact,
// capacity-lb-uniform, capacity-lb-indep, capacity-ub-genie,
// capacity-low-snr, alpha-t2, alpha-t3, volume-exact, volume-mc.
OpResult evaluate_operation(const std::string& op, const CommonArgs& args);

}  // namespace qmimo::cli
