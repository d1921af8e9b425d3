// Command-line front end for the one-bit MIMO capacity library.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qmimo/types.hpp"

namespace {

using qmimo::cli::CommonArgs;

void add_output_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--format", args.output.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", args.output.out_path,
                  "Output file (manifest written alongside)");
}

void add_mc_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--samples", args.samples,
                  "Monte Carlo sample count (default from QMIMO_SAMPLE_BUDGET "
                  "or 1e6)");
  cmd->add_option("--seed", args.seed, "Random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic capacity of one-bit quantized MIMO fading channels"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string suite = "all";
  std::string config_path;
  std::string which;  // capacity subtarget

  CLI::App* capacity =
      app.add_subcommand("capacity", "Capacity of the coherent or non-coherent channel");
  capacity->add_option("channel", which, "coherent or noncoherent")
      ->required()
      ->check(CLI::IsMember({"coherent", "noncoherent"}));
  capacity->add_option("--snr", args.snr, "Signal-to-noise ratio (linear)");
  capacity->add_option("--gamma", args.gamma, "snr/(1+snr), alternative to --snr");
  capacity->add_option("--T", args.T, "Coherence block length");
  capacity->add_option("--nt", args.nt, "Transmit antennas");
  capacity->add_option("--nr", args.nr, "Receive antennas")->required();
  capacity->add_option("--method", args.method, "Evaluation method");
  add_mc_options(capacity, args);
  add_output_options(capacity, args);

  CLI::App* bounds = app.add_subcommand(
      "bounds", "All non-coherent capacity bounds at one parameter point");
  bounds->add_option("--snr", args.snr, "Signal-to-noise ratio (linear)");
  bounds->add_option("--gamma", args.gamma, "snr/(1+snr)");
  bounds->add_option("--T", args.T, "Coherence block length")->required();
  bounds->add_option("--nt", args.nt, "Transmit antennas");
  bounds->add_option("--nr", args.nr, "Receive antennas")->required();
  add_mc_options(bounds, args);
  add_output_options(bounds, args);

  CLI::App* volume =
      app.add_subcommand("volume", "Volume of the correlation region Q_gamma");
  volume->add_option("--T", args.T, "Block length")->required();
  volume->add_option("--gamma", args.gamma, "Power ratio (default 1)");
  volume->add_option("--method", args.method,
                     "exact, mc, asymptotic-coarse, asymptotic-fine");
  add_mc_options(volume, args);
  add_output_options(volume, args);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Simulate one block and report the correlation estimator");
  simulate->add_option("--snr", args.snr, "Signal-to-noise ratio (linear)");
  simulate->add_option("--gamma", args.gamma, "snr/(1+snr)");
  simulate->add_option("--T", args.T, "Block length")->required();
  simulate->add_option("--nr", args.nr, "Receive antennas")->required();
  simulate->add_option("--seed", args.seed, "Random seed");
  add_output_options(simulate, args);

  CLI::App* validate =
      app.add_subcommand("validate", "Run empirical validation suites");
  validate->add_option("suite", suite,
                       "fisher-coherent, volume, estimator-mse, mi-t2, "
                       "orthant, all");
  validate->add_option("--T", args.T, "Block length");
  validate->add_option("--gamma", args.gamma, "Power ratio");
  add_mc_options(validate, args);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Evaluate an operation over a parameter grid");
  sweep->add_option("--config", config_path, "Flat key-value config file")
      ->required();
  add_output_options(sweep, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits 0, bad arguments exit 2
  }

  try {
    if (capacity->parsed()) {
      if (which == "coherent") {
        if (args.snr <= 0.0 || args.nt < 1)
          throw std::invalid_argument("capacity coherent needs --snr and --nt");
        return qmimo::cli::run_capacity_coherent(args);
      }
      if (args.T < 2)
        throw std::invalid_argument("capacity noncoherent needs --T >= 2");
      return qmimo::cli::run_capacity_noncoherent(args);
    }
    if (bounds->parsed()) return qmimo::cli::run_bounds(args);
    if (volume->parsed()) return qmimo::cli::run_volume(args);
    if (simulate->parsed()) return qmimo::cli::run_simulate(args);
    if (validate->parsed()) return qmimo::cli::run_validate(suite, args);
    if (sweep->parsed()) return qmimo::cli::run_sweep(config_path, args);
    return 2;
  } catch (const qmimo::unsupported_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
