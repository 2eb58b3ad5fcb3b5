#pragma once

#include "dob/numerics/linalg.hpp"

namespace dob::control {

using numerics::Vector;

/// Position (1/s^2) and velocity (1/s) gains of the outer PD loop.
struct AbcGains {
  double kp;
  double kd;

  AbcGains(double kp, double kd);
};

struct Reference {
  double q = 0.0;
  double qd = 0.0;
  double qdd = 0.0;
};

/// qdd_des = qdd_ref + Kd (qd_ref - qd) + Kp (q_ref - q)
double abc_desired_accel(const Reference& ref, double q, double qd, const AbcGains& gains);

/// Per-joint version of the same law.
Vector abc_desired_accel(const Vector& q_ref, const Vector& qd_ref, const Vector& qdd_ref, const Vector& q,
                         const Vector& qd, const AbcGains& gains);

}  // namespace dob::control
