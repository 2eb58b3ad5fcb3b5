#include "dob/control2dof/abc.hpp"

#include "dob/error.hpp"

#include <cmath>

namespace dob::control {

AbcGains::AbcGains(double kp_, double kd_) : kp(kp_), kd(kd_) {
  if (!(kp > 0.0) || !(kd > 0.0) || !std::isfinite(kp) || !std::isfinite(kd)) {
    throw InvalidInput("ABC gains Kp and Kd must be positive and finite");
  }
}

double abc_desired_accel(const Reference& ref, double q, double qd, const AbcGains& gains) {
  return ref.qdd + gains.kd * (ref.qd - qd) + gains.kp * (ref.q - q);
}

Vector abc_desired_accel(const Vector& q_ref, const Vector& qd_ref, const Vector& qdd_ref, const Vector& q,
                         const Vector& qd, const AbcGains& gains) {
  const auto n = q.size();
  if (q_ref.size() != n || qd_ref.size() != n || qdd_ref.size() != n || qd.size() != n) {
    throw InvalidInput("abc_desired_accel: reference and measurement sizes differ");
  }
  return qdd_ref + gains.kd * (qd_ref - qd) + gains.kp * (q_ref - q);
}

}  // namespace dob::control
