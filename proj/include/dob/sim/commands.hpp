#pragma once

#include "dob/freqdomain/rational_transfer.hpp"
#include "dob/freqdomain/response.hpp"
#include "dob/freqdomain/root_locus.hpp"
#include "dob/sim/config.hpp"
#include "dob/sim/runner.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dob::sim {

struct CommandOptions {
  std::string config;
  std::string out;
  bool force = false;
  std::optional<std::uint64_t> seed;
};

/// Transfer selected by analysis.bode. Sensitivity is available for dob1 and
/// hdob observers on lti and servo plants; loop and closed_loop need the abc
/// controller on a servo with dob1. Other combinations raise
/// UnsupportedConfiguration.
freq::RationalTransfer scenario_transfer(const Scenario& s, const std::string& which);

/// Alpha grid of analysis.alpha_grid, or 50 points evenly spaced on [0.1, 5].
std::vector<double> alpha_grid(const Scenario& s);

/// Largest logged |e| over the final 20% of the run.
double steady_error_norm(const Trajectory& traj);

/// Peak disturbance sensitivity in dB, when the scenario has one.
std::optional<double> peak_sensitivity_db(const Scenario& s);
/// Phase margin of the abc loop, when applicable and finite.
std::optional<double> phase_margin_deg(const Scenario& s);

struct SweepRow {
  double value;
  double steady_err_norm;
  std::optional<double> peak_sens_db;
  std::optional<double> phase_margin_deg;
};

/// One run per value with `param` (dotted path) overridden. Runs execute on
/// up to `threads` workers (0 = hardware concurrency); rows come back in
/// value order.
std::vector<SweepRow> run_sweep(const nlohmann::json& doc, const std::string& param, const std::vector<double>& values,
                                unsigned threads = 0);

// value,steady_err_norm,peak_sens_db,phase_margin_deg
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

void cmd_bode(const CommandOptions& opts);
void cmd_rootlocus(const CommandOptions& opts);
/// Writes the trajectory; after a divergence the finite prefix is written and
/// DivergenceError is raised.
void cmd_simulate(const CommandOptions& opts);
void cmd_sweep(const CommandOptions& opts, const std::string& param, const std::vector<double>& values);

}  // namespace dob::sim
