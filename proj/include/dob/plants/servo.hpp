#pragma once

#include "dob/freqdomain/rational_transfer.hpp"
#include "dob/numerics/linalg.hpp"

namespace dob::plants {

/// Single-axis servo: inertia J_m driven by K_tau * I, with the velocity
/// measured through a first-order filter of bandwidth g_v. The `_n` fields
/// are the nominal values the controller and observer believe in.
struct ServoPlant {
  double j_m;     // kg m^2
  double j_mn;
  double k_tau;   // N m / A
  double k_taun;
  double g_v;     // rad/s

  ServoPlant(double j_m, double j_mn, double k_tau, double k_taun, double g_v);
};

/// Inertia/thrust mismatch ratio seen by the DOb loop:
///   alpha = (J_mn K_tau) / (J_m K_taun).
/// Equals 1 when nominal matches actual.
double servo_alpha(const ServoPlant& p);

/// State [q, qdot, v_f]:
///   qddot = (K_tau I - tau_d) / J_m,   v_f' = g_v (qdot - v_f).
numerics::Vector servo_dynamics(const ServoPlant& p, const numerics::Vector& state, double current, double tau_d);

/// Lumped disturbance in torque units seen through the nominal model,
/// tau_dis = K_taun I - J_mn qddot.
double servo_lumped_disturbance(const ServoPlant& p, double current, double tau_d);

/// Sensitivity from tau_d to velocity of the servo loop closed by a
/// first-order DOb of bandwidth g_dob fed by the filtered velocity, assembled
/// block by block from the plant, filter and observer transfers.
freq::RationalTransfer servo_dob_sensitivity(const ServoPlant& p, double g_dob);

}  // namespace dob::plants
