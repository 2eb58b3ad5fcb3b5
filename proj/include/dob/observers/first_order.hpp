#pragma once

#include "dob/plants/lti_plant.hpp"

namespace dob::observers {

using numerics::Matrix;
using numerics::Vector;
using plants::NominalLinearModel;

/// tau_hat = z - L x
Vector dob1_estimate(const Vector& z, const Vector& x, double gain);

/// z' = L (A_n x + b_n u - tau_hat). Composed with the true plant the
/// estimation error obeys e' = -L e - tau_dis'.
Vector dob1_zdot(const Vector& z, const Vector& x, double u, const NominalLinearModel& nominal, double gain);

/// First-order auxiliary-variable DOb. The estimate is always derived from
/// (z, x), never stored.
struct FirstOrderDob {
  double gain;
  Vector z;

  FirstOrderDob(double gain, Vector z0);
  /// z(0) = L x(0), so the initial estimate is zero.
  static FirstOrderDob at_rest(double gain, const Vector& x0);

  Vector estimate(const Vector& x) const { return dob1_estimate(z, x, gain); }
  Vector zdot(const Vector& x, double u, const NominalLinearModel& nominal) const {
    return dob1_zdot(z, x, u, nominal, gain);
  }
};

/// Inputs of the uniform-ultimate-bound predictor
///   ||e(t)|| <= lambda e^{-L (t - t0)} ||e(t0)|| + (lambda / L) delta_dot,
/// with delta_dot a bound on ||tau_dis'||. lambda = 1 is exact for scalar and
/// diagonal error dynamics; other cases must supply their own constant.
struct BoundPrediction {
  double lambda = 1.0;
  double gain = 1.0;
  double delta_dot = 0.0;
  double e0 = 0.0;
};

double ultimate_bound(const BoundPrediction& bp, double t, double t0);

}  // namespace dob::observers
