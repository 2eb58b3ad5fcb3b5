#include "dob/plants/servo.hpp"

#include "dob/error.hpp"

#include <cmath>

namespace dob::plants {

ServoPlant::ServoPlant(double j_m_, double j_mn_, double k_tau_, double k_taun_, double g_v_)
    : j_m(j_m_), j_mn(j_mn_), k_tau(k_tau_), k_taun(k_taun_), g_v(g_v_) {
  for (double v : {j_m, j_mn, k_tau, k_taun, g_v}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidInput("ServoPlant: all parameters must be positive and finite");
    }
  }
}

double servo_alpha(const ServoPlant& p) { return (p.j_mn * p.k_tau) / (p.j_m * p.k_taun); }

numerics::Vector servo_dynamics(const ServoPlant& p, const numerics::Vector& state, double current, double tau_d) {
  if (state.size() != 3) {
    throw InvalidInput("servo_dynamics: state must be [q, qdot, v_f]");
  }
  numerics::Vector d(3);
  d << state(1), (p.k_tau * current - tau_d) / p.j_m, p.g_v * (state(1) - state(2));
  return d;
}

double servo_lumped_disturbance(const ServoPlant& p, double current, double tau_d) {
  const double qddot = (p.k_tau * current - tau_d) / p.j_m;
  return p.k_taun * current - p.j_mn * qddot;
}

freq::RationalTransfer servo_dob_sensitivity(const ServoPlant& p, double g_dob) {
  using freq::RationalTransfer;
  using numerics::Polynomial;
  // Loop around the velocity: plant 1/(J_m s), current gain K_tau/K_taun,
  // velocity filter g_v/(s+g_v), and the DOb feedback
  // J_mn s Q/(1-Q) = J_mn g_dob (Q = g/(s+g)).
  const RationalTransfer plant{Polynomial::constant(1.0), Polynomial{p.j_m, 0.0}};
  const RationalTransfer filter{Polynomial::constant(p.g_v), Polynomial{1.0, p.g_v}};
  const RationalTransfer q{Polynomial::constant(g_dob), Polynomial{1.0, g_dob}};
  const RationalTransfer nominal_inverse{Polynomial{p.j_mn, 0.0}, Polynomial::constant(1.0)};
  const RationalTransfer dob = (nominal_inverse * q / (RationalTransfer::one() - q)).simplified();
  const RationalTransfer loop = (p.k_tau / p.k_taun) * (plant * filter * dob);
  return (RationalTransfer::one() / (RationalTransfer::one() + loop)).simplified();
}

}  // namespace dob::plants
