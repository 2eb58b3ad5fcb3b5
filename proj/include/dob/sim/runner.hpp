#pragma once

#include "dob/sim/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dob::sim {

struct Divergence {
  std::size_t last_finite_index;  // index of the last logged sample
  double time;
  std::string message;
};

/// Logged closed-loop history on a uniform grid. Disturbance quantities
/// (tau_dis, tau_hat, err) are in the observer's coordinates: the full state
/// space for lti and pendulum plants, motor torque for the servo, joint
/// torques for the arm.
struct Trajectory {
  std::vector<std::string> state_names;
  std::vector<double> t;
  std::vector<Vector> state;      // true plant state
  std::vector<Vector> state_dot;  // plant state derivative
  std::vector<Vector> measured;   // what the observer and controller see
  std::vector<Vector> u;
  std::vector<Vector> tau_d;      // external disturbance
  std::vector<Vector> tau_dis;    // lumped disturbance, true value
  std::vector<Vector> tau_hat;
  std::vector<std::vector<Vector>> higher_estimates;  // hdob: derivatives 1..k-1
  std::vector<Vector> err;        // tau_hat - tau_dis
  std::vector<double> err_norm;
  std::vector<double> matched_err;  // along b_n, sfb only
  std::vector<double> v;            // x'Px, when a certificate is configured
  bool has_v = false;
  std::optional<Divergence> divergence;

  std::size_t size() const { return t.size(); }
};

/// Fixed-step RK4 simulation of plant, observer auxiliaries and exosystem as
/// one state vector. The control law is evaluated continuously inside every
/// stage; measurement noise is drawn once per step. Divergence stops the run
/// and returns the finite prefix with `divergence` set.
Trajectory run(const Scenario& scenario);

}  // namespace dob::sim
