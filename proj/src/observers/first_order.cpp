#include "dob/observers/first_order.hpp"

#include "dob/error.hpp"

#include <cmath>

namespace dob::observers {

Vector dob1_estimate(const Vector& z, const Vector& x, double gain) {
  if (z.size() != x.size()) {
    throw InvalidInput("dob1_estimate: z and x differ in size");
  }
  return z - gain * x;
}

Vector dob1_zdot(const Vector& z, const Vector& x, double u, const NominalLinearModel& nominal, double gain) {
  if (nominal.a_n.rows() != x.size() || nominal.b_n.size() != x.size()) {
    throw InvalidInput("dob1_zdot: nominal model does not match the state size");
  }
  return gain * (nominal.a_n * x + nominal.b_n * u - dob1_estimate(z, x, gain));
}

FirstOrderDob::FirstOrderDob(double gain_, Vector z0) : gain(gain_), z(std::move(z0)) {
  if (!(gain > 0.0) || !std::isfinite(gain)) {
    throw InvalidInput("first-order DOb gain must be positive");
  }
}

FirstOrderDob FirstOrderDob::at_rest(double gain, const Vector& x0) { return {gain, gain * x0}; }

double ultimate_bound(const BoundPrediction& bp, double t, double t0) {
  if (!(bp.gain > 0.0) || bp.lambda < 0.0 || bp.delta_dot < 0.0 || bp.e0 < 0.0) {
    throw InvalidInput("ultimate_bound: gain must be positive and the other inputs non-negative");
  }
  if (t < t0) {
    throw InvalidInput("ultimate_bound: t must not precede t0");
  }
  return bp.lambda * std::exp(-bp.gain * (t - t0)) * bp.e0 + (bp.lambda / bp.gain) * bp.delta_dot;
}

}  // namespace dob::observers
