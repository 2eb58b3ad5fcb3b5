#include "dob/error.hpp"
#include "dob/sim/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, dob::sim::CommandOptions& opts) {
  cmd->add_option("--config", opts.config, "Scenario document (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out, "Output CSV path")->required();
  cmd->add_flag("--force", opts.force, "Overwrite an existing output file");
  cmd->add_option("--seed", opts.seed, "Override sim.seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disturbance observer analysis and simulation"};
  app.require_subcommand(1);

  dob::sim::CommandOptions opts;
  std::string param;
  std::vector<double> values;

  auto* bode = app.add_subcommand("bode", "Frequency response of the configured transfer");
  auto* locus = app.add_subcommand("rootlocus", "Closed-loop poles of the acceleration-based loop over alpha");
  auto* simulate = app.add_subcommand("simulate", "Run the scenario and write its trajectory");
  auto* sweep = app.add_subcommand("sweep", "Run the scenario once per parameter value");
  for (auto* cmd : {bode, locus, simulate, sweep}) {
    add_common(cmd, opts);
  }
  sweep->add_option("--param", param, "Dotted path of the swept number, e.g. observer.gain")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bode) {
      dob::sim::cmd_bode(opts);
    } else if (*locus) {
      dob::sim::cmd_rootlocus(opts);
    } else if (*simulate) {
      dob::sim::cmd_simulate(opts);
    } else if (*sweep) {
      dob::sim::cmd_sweep(opts, param, values);
    }
  } catch (const dob::Error& e) {
    std::cerr << "dob: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "dob: unexpected failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
