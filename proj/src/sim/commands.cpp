#include "dob/sim/commands.hpp"

#include "dob/error.hpp"
#include "dob/format.hpp"
#include "dob/freqdomain/csv.hpp"
#include "dob/freqdomain/filters.hpp"
#include "dob/sim/trajectory_csv.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace dob::sim {

using freq::RationalTransfer;
using numerics::Polynomial;

namespace {

// S = s^k / (s^k + L_1 s^(k-1) + ... + L_k) for the auxiliary-variable DOb
// with full-state measurement.
RationalTransfer linear_dob_sensitivity(const std::vector<double>& gains) {
  std::vector<double> den{1.0};
  den.insert(den.end(), gains.begin(), gains.end());
  std::vector<double> num(gains.size() + 1, 0.0);
  num.front() = 1.0;
  return {Polynomial(num), Polynomial(den)};
}

const ServoPlantSpec* servo_with_dob1(const Scenario& s) {
  const auto* servo = std::get_if<ServoPlantSpec>(&s.plant);
  return servo != nullptr && s.observer.kind == ObserverKind::dob1 ? servo : nullptr;
}

RationalTransfer sensitivity(const Scenario& s) {
  if (const auto* servo = servo_with_dob1(s)) {
    const auto& p = servo->params;
    return freq::servo_sensitivity(p.g_v, s.observer.gain, plants::servo_alpha(p));
  }
  if (std::holds_alternative<LtiPlantSpec>(s.plant)) {
    if (s.observer.kind == ObserverKind::dob1) {
      return linear_dob_sensitivity({s.observer.gain});
    }
    if (s.observer.kind == ObserverKind::hdob) {
      return linear_dob_sensitivity(s.observer.gains);
    }
  }
  throw UnsupportedConfiguration("sensitivity is defined for dob1 or hdob on lti plants and dob1 on servo plants");
}

RationalTransfer abc_loop(const Scenario& s) {
  const auto* servo = servo_with_dob1(s);
  if (servo == nullptr || s.controller.kind != ControllerKind::abc) {
    throw UnsupportedConfiguration("the abc loop needs a servo plant, a dob1 observer and an abc controller");
  }
  return freq::abc_loop_tf(s.controller.kp, s.controller.kd, plants::servo_alpha(servo->params), s.observer.gain);
}

void write_output(const CommandOptions& opts, const std::string& text) {
  namespace fs = std::filesystem;
  if (opts.out.empty()) {
    throw InvalidInput("no output path given");
  }
  if (fs::exists(opts.out) && !opts.force) {
    throw InvalidInput("refusing to overwrite '" + opts.out + "' (pass --force)");
  }
  std::ofstream os(opts.out, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw InvalidInput("cannot open '" + opts.out + "' for writing");
  }
  os << text;
  if (!os.flush()) {
    throw InvalidInput("failed writing '" + opts.out + "'");
  }
}

void check_writable(const CommandOptions& opts) {
  if (std::filesystem::exists(opts.out) && !opts.force) {
    throw InvalidInput("refusing to overwrite '" + opts.out + "' (pass --force)");
  }
}

nlohmann::json load_with_seed(const CommandOptions& opts) {
  auto doc = read_document(opts.config);
  if (opts.seed) {
    if (!doc.is_object() || !doc.contains("sim") || !doc["sim"].is_object()) {
      throw ConfigError("sim", "missing required key");
    }
    doc["sim"]["seed"] = *opts.seed;
  }
  return doc;
}

}  // namespace

RationalTransfer scenario_transfer(const Scenario& s, const std::string& which) {
  if (which == "sensitivity") {
    return sensitivity(s);
  }
  if (which == "complementary") {
    return (RationalTransfer::one() - sensitivity(s)).simplified();
  }
  if (which == "loop") {
    return abc_loop(s);
  }
  if (which == "closed_loop") {
    const auto l = abc_loop(s);
    return (l / (RationalTransfer::one() + l)).simplified();
  }
  throw InvalidInput("unknown transfer '" + which + "'");
}

std::vector<double> alpha_grid(const Scenario& s) {
  if (!s.analysis.alpha_grid.empty()) {
    return s.analysis.alpha_grid;
  }
  std::vector<double> grid(50);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = 0.1 + (5.0 - 0.1) * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
  }
  return grid;
}

double steady_error_norm(const Trajectory& traj) {
  if (traj.size() == 0) {
    throw InvalidInput("empty trajectory");
  }
  const double t_end = traj.t.back();
  const double t_from = t_end - 0.2 * (t_end - traj.t.front());
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.t[i] >= t_from) {
      worst = std::max(worst, traj.err_norm[i]);
    }
  }
  return worst;
}

std::optional<double> peak_sensitivity_db(const Scenario& s) {
  try {
    const auto sens = sensitivity(s);
    return 20.0 * std::log10(freq::peak_magnitude(sens, s.analysis.omega_min, s.analysis.omega_max));
  } catch (const UnsupportedConfiguration&) {
    return std::nullopt;
  }
}

std::optional<double> phase_margin_deg(const Scenario& s) {
  if (servo_with_dob1(s) == nullptr || s.controller.kind != ControllerKind::abc) {
    return std::nullopt;
  }
  const auto m = freq::margins(abc_loop(s));
  if (!m.has_gain_crossover) {
    return std::nullopt;
  }
  return m.phase_margin_deg;
}

std::vector<SweepRow> run_sweep(const nlohmann::json& doc, const std::string& param, const std::vector<double>& values,
                                unsigned threads) {
  if (values.empty()) {
    throw InvalidInput("sweep needs at least one value");
  }
  // Validate every variant up front so configuration errors surface before
  // any run starts.
  std::vector<Scenario> scenarios;
  scenarios.reserve(values.size());
  for (double v : values) {
    auto variant = doc;
    set_parameter(variant, param, v);
    scenarios.push_back(parse_scenario(variant));
  }

  std::vector<SweepRow> rows(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        const auto& s = scenarios[i];
        const Trajectory traj = run(s);
        if (traj.divergence) {
          throw DivergenceError("sweep value " + format_double(values[i]) + ": " + traj.divergence->message,
                                traj.divergence->time);
        }
        rows[i] = {values[i], steady_error_norm(traj), peak_sensitivity_db(s), phase_margin_deg(s)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned hw = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  const auto n_workers = std::min<std::size_t>(hw, values.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "value,steady_err_norm,peak_sens_db,phase_margin_deg\n";
  for (const auto& r : rows) {
    os << format_double(r.value) << ',' << format_double(r.steady_err_norm) << ','
       << (r.peak_sens_db ? format_double(*r.peak_sens_db) : "") << ','
       << (r.phase_margin_deg ? format_double(*r.phase_margin_deg) : "") << '\n';
  }
}

void cmd_bode(const CommandOptions& opts) {
  check_writable(opts);
  const Scenario s = parse_scenario(load_with_seed(opts));
  const auto tf = scenario_transfer(s, s.analysis.bode);
  const auto fr = freq::bode(tf, s.analysis.omega_min, s.analysis.omega_max, s.analysis.points);
  std::ostringstream os;
  freq::write_frequency_response_csv(os, fr);
  write_output(opts, os.str());
}

void cmd_rootlocus(const CommandOptions& opts) {
  check_writable(opts);
  const Scenario s = parse_scenario(load_with_seed(opts));
  if (s.controller.kind != ControllerKind::abc || (s.observer.kind != ObserverKind::dob1 &&
                                                   s.observer.kind != ObserverKind::manip_dob)) {
    throw UnsupportedConfiguration("rootlocus needs an abc controller with a dob1 or manip_dob observer");
  }
  const auto rows = freq::root_locus_alpha(s.controller.kp, s.controller.kd, s.observer.gain, alpha_grid(s));
  std::ostringstream os;
  freq::write_root_locus_csv(os, rows);
  write_output(opts, os.str());
}

void cmd_simulate(const CommandOptions& opts) {
  check_writable(opts);
  const Scenario s = parse_scenario(load_with_seed(opts));
  const Trajectory traj = run(s);
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  write_output(opts, os.str());
  if (traj.divergence) {
    throw DivergenceError("simulation diverged at t = " + format_double(traj.divergence->time) +
                              " (last finite sample " + std::to_string(traj.divergence->last_finite_index) +
                              "): " + traj.divergence->message,
                          traj.divergence->time);
  }
}

void cmd_sweep(const CommandOptions& opts, const std::string& param, const std::vector<double>& values) {
  check_writable(opts);
  const auto rows = run_sweep(load_with_seed(opts), param, values);
  std::ostringstream os;
  write_sweep_csv(os, rows);
  write_output(opts, os.str());
}

}  // namespace dob::sim
