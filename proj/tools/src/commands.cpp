#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "qmimo/coherent.hpp"
#include "qmimo/covariance.hpp"
#include "qmimo/noncoherent.hpp"
#include "qmimo/scalar.hpp"
#include "qmimo/simulator.hpp"
#include "qmimo/types.hpp"

namespace qmimo::cli {

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

SnrContext resolve_snr(const CommonArgs& args) {
  if (args.gamma > 0.0) return SnrContext::from_gamma(args.gamma);
  if (args.snr > 0.0) return SnrContext::from_snr(args.snr);
  throw std::invalid_argument("one of --snr or --gamma is required");
}

void add_capacity_fields(Record& r, const CapacityEstimate& est) {
  r.emplace_back("value_bits", format_double(est.bits_per_use));
  r.emplace_back("dimension_term", format_double(est.terms.dimension_term));
  r.emplace_back("volume_term", format_double(est.terms.volume_term));
  r.emplace_back("alpha_term", format_double(est.terms.alpha_term));
  r.emplace_back("method", method_name(est.method));
  r.emplace_back("asymptotic", est.asymptotic ? "true" : "false");
  r.emplace_back("std_err", format_double(est.std_err));
}

RunManifest make_manifest(const std::string& op, const CommonArgs& args) {
  RunManifest m;
  m.operation = op;
  if (args.snr > 0.0) m.params.emplace_back("snr", format_double(args.snr));
  if (args.gamma > 0.0) m.params.emplace_back("gamma", format_double(args.gamma));
  if (args.T) m.params.emplace_back("T", std::to_string(args.T));
  if (args.nt) m.params.emplace_back("nt", std::to_string(args.nt));
  if (args.nr) m.params.emplace_back("nr", std::to_string(args.nr));
  if (!args.method.empty()) m.params.emplace_back("method", args.method);
  m.seed = args.seed;
  m.samples = resolve_samples(args.samples);
  return m;
}

}  // namespace

uint64_t default_samples() {
  if (const char* env = std::getenv("QMIMO_SAMPLE_BUDGET")) {
    double v = std::atof(env);
    if (v >= 1.0) return static_cast<uint64_t>(v);
  }
  return 1000000;
}

uint64_t resolve_samples(uint64_t requested) {
  return requested ? requested : default_samples();
}

int run_capacity_coherent(CommonArgs args) {
  Timer timer;
  if (args.method.empty()) args.method = "exact";
  CoherentParams params{args.snr, args.nt, args.nr};
  CapacityEstimate est;
  if (args.method == "exact") {
    est = capacity_coherent(params);
  } else if (args.method == "spherical") {
    est = capacity_coherent_spherical(params);
  } else if (args.method == "low-snr" || args.method == "high-snr" ||
             args.method == "large-nt") {
    params.validate();
    CoherentRegime regime = args.method == "low-snr"
                                ? CoherentRegime::low_snr
                                : (args.method == "high-snr"
                                       ? CoherentRegime::high_snr
                                       : CoherentRegime::large_nt);
    est.terms.dimension_term =
        0.5 * params.nt * std::log2(params.nr / (kTwoPi * std::exp(1.0)));
    est.terms.volume_term = log_vol_ball(params.nt) * kLog2e;
    est.terms.alpha_term =
        log_alpha_asymptotic(params.snr, params.nt, regime) * kLog2e;
    est.bits_per_use = est.terms.dimension_term + est.terms.volume_term +
                       est.terms.alpha_term;
    est.method = regime == CoherentRegime::low_snr
                     ? Method::low_snr
                     : (regime == CoherentRegime::high_snr ? Method::high_snr
                                                           : Method::large_nt);
  } else {
    throw unsupported_error("unknown coherent method '" + args.method +
                            "' (use exact, spherical, low-snr, high-snr, large-nt)");
  }
  Record r;
  r.emplace_back("snr", format_double(args.snr));
  r.emplace_back("nt", std::to_string(args.nt));
  r.emplace_back("nr", std::to_string(args.nr));
  add_capacity_fields(r, est);
  RunManifest m = make_manifest("capacity-coherent", args);
  m.wall_ms = timer.ms();
  emit_records({r}, m, args.output);
  return 0;
}

int run_capacity_noncoherent(CommonArgs args) {
  Timer timer;
  if (args.method.empty()) args.method = "exact";
  SnrContext ctx = resolve_snr(args);
  if (args.nt == 0) args.nt = args.T;
  NoncoherentParams params{ctx.snr, args.T, args.nt, args.nr};
  uint64_t samples = resolve_samples(args.samples);
  CapacityEstimate est;
  if (args.method == "exact") {
    est = capacity_noncoherent_exact(params, samples, args.seed);
  } else if (args.method == "lb-uniform") {
    est = capacity_lb_uniform(params);
  } else if (args.method == "lb-indep") {
    est = capacity_lb_indep(params);
  } else if (args.method == "ub-genie") {
    est = capacity_ub_genie(params);
  } else if (args.method == "low-snr") {
    est = capacity_low_snr(params);
  } else {
    throw unsupported_error("unknown non-coherent method '" + args.method +
                            "' (use exact, lb-uniform, lb-indep, ub-genie, low-snr)");
  }
  Record r;
  r.emplace_back("T", std::to_string(args.T));
  r.emplace_back("snr", format_double(ctx.snr));
  r.emplace_back("gamma", format_double(ctx.gamma));
  r.emplace_back("nr", std::to_string(args.nr));
  add_capacity_fields(r, est);
  r.emplace_back("seed", std::to_string(args.seed));
  RunManifest m = make_manifest("capacity-noncoherent", args);
  m.wall_ms = timer.ms();
  emit_records({r}, m, args.output);
  return 0;
}

int run_bounds(CommonArgs args) {
  Timer timer;
  SnrContext ctx = resolve_snr(args);
  if (args.nt == 0) args.nt = args.T;
  NoncoherentParams params{ctx.snr, args.T, args.nt, args.nr};
  uint64_t samples = resolve_samples(args.samples);

  std::vector<Record> records;
  auto push = [&](const char* name, const CapacityEstimate& est) {
    Record r;
    r.emplace_back("bound", name);
    r.emplace_back("T", std::to_string(args.T));
    r.emplace_back("snr", format_double(ctx.snr));
    r.emplace_back("gamma", format_double(ctx.gamma));
    r.emplace_back("nr", std::to_string(args.nr));
    add_capacity_fields(r, est);
    records.push_back(std::move(r));
  };
  push("lb-uniform", capacity_lb_uniform(params));
  push("lb-indep", capacity_lb_indep(params));
  push("ub-genie", capacity_ub_genie(params));
  if (args.T <= 3)
    push("exact", capacity_noncoherent_exact(params, samples, args.seed));
  RunManifest m = make_manifest("bounds", args);
  m.wall_ms = timer.ms();
  emit_records(records, m, args.output);
  return 0;
}

int run_volume(CommonArgs args) {
  Timer timer;
  if (args.method.empty()) args.method = "exact";
  double gamma = args.gamma > 0.0 ? args.gamma : 1.0;
  Record r;
  r.emplace_back("T", std::to_string(args.T));
  r.emplace_back("gamma", format_double(gamma));
  r.emplace_back("method", args.method);
  if (args.method == "exact") {
    r.emplace_back("volume", format_double(vol_Q_exact(args.T, gamma)));
    r.emplace_back("std_err", "0");
  } else if (args.method == "mc") {
    McEstimate est =
        vol_Q_mc(args.T, gamma, resolve_samples(args.samples), args.seed);
    r.emplace_back("volume", format_double(est.estimate));
    r.emplace_back("std_err", format_double(est.std_err));
  } else if (args.method == "asymptotic-coarse" ||
             args.method == "asymptotic-fine") {
    VolPrecision p = args.method == "asymptotic-fine" ? VolPrecision::fine
                                                      : VolPrecision::coarse;
    r.emplace_back("log2_volume", format_double(log_vol_Q_asymptotic_bits(args.T, p)));
    r.emplace_back("std_err", "0");
  } else {
    throw unsupported_error("unknown volume method '" + args.method +
                            "' (use exact, mc, asymptotic-coarse, asymptotic-fine)");
  }
  RunManifest m = make_manifest("volume", args);
  m.wall_ms = timer.ms();
  emit_records({r}, m, args.output);
  return 0;
}

int run_simulate(CommonArgs args) {
  Timer timer;
  SnrContext ctx = resolve_snr(args);
  CorrelationVector q = sample_uniform_Q(args.T, ctx.gamma, args.seed);
  Eigen::MatrixXd x = input_from_q(q, ctx.snr);
  ChannelBlock block = simulate_block(x, args.nr, derive_seed(args.seed, 1));
  CorrelationVector q_hat = estimate_q_hat(block.Y);
  std::vector<Record> records;
  for (int k = 0; k < pair_count(args.T); ++k) {
    auto [i, j] = pair_from_index(k, args.T);
    Record r;
    r.emplace_back("T", std::to_string(args.T));
    r.emplace_back("snr", format_double(ctx.snr));
    r.emplace_back("nr", std::to_string(args.nr));
    r.emplace_back("pair", std::to_string(i + 1) + "-" + std::to_string(j + 1));
    r.emplace_back("q", format_double(q.entries[k]));
    r.emplace_back("q_hat", format_double(q_hat.entries[k]));
    r.emplace_back("abs_err",
                   format_double(std::fabs(q.entries[k] - q_hat.entries[k])));
    r.emplace_back("mse_bound", format_double(kPi * kPi / args.nr));
    r.emplace_back("seed", std::to_string(args.seed));
    records.push_back(std::move(r));
  }
  RunManifest m = make_manifest("simulate", args);
  m.wall_ms = timer.ms();
  emit_records(records, m, args.output);
  return 0;
}

OpResult evaluate_operation(const std::string& op, const CommonArgs& args) {
  uint64_t samples = resolve_samples(args.samples);
  if (op == "capacity-coherent") {
    return {capacity_coherent({args.snr, args.nt, args.nr}).bits_per_use, 0.0};
  }
  if (op == "capacity-coherent-spherical") {
    return {capacity_coherent_spherical({args.snr, args.nt, args.nr}).bits_per_use,
            0.0};
  }
  SnrContext ctx = resolve_snr(args);
  int nt = args.nt ? args.nt : args.T;
  NoncoherentParams params{ctx.snr, args.T, nt, args.nr};
  if (op == "capacity-noncoherent-exact") {
    CapacityEstimate est =
        capacity_noncoherent_exact(params, samples, args.seed);
    return {est.bits_per_use, est.std_err};
  }
  if (op == "capacity-lb-uniform")
    return {capacity_lb_uniform(params).bits_per_use, 0.0};
  if (op == "capacity-lb-indep")
    return {capacity_lb_indep(params).bits_per_use, 0.0};
  if (op == "capacity-ub-genie")
    return {capacity_ub_genie(params).bits_per_use, 0.0};
  if (op == "capacity-low-snr")
    return {capacity_low_snr(params).bits_per_use, 0.0};
  if (op == "alpha-t2") return {alpha_t2(ctx.gamma), 0.0};
  if (op == "alpha-t3") {
    McEstimate est = alpha_t3(ctx.gamma, samples, args.seed);
    return {est.estimate, est.std_err};
  }
  if (op == "volume-exact") return {vol_Q_exact(args.T, ctx.gamma), 0.0};
  if (op == "volume-mc") {
    McEstimate est = vol_Q_mc(args.T, ctx.gamma, samples, args.seed);
    return {est.estimate, est.std_err};
  }
  throw unsupported_error("unknown operation '" + op + "'");
}

}  // namespace qmimo::cli
