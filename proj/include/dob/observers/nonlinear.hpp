#pragma once

#include "dob/numerics/linalg.hpp"
#include "dob/plants/nonlinear.hpp"

#include <functional>
#include <span>

namespace dob::observers {

using numerics::Matrix;
using numerics::Vector;

/// State-dependent observer gain L(x) and its Jacobian dL/dx. The error
/// dynamics are e' = -dL/dx e - tau_dis', so the Jacobian must stay positive
/// definite along the trajectory.
struct NonlinearGain {
  std::function<Vector(const Vector&)> value;
  std::function<Matrix(const Vector&)> jacobian;
};

/// L(x) = diag(lambda) x
NonlinearGain linear_gain(const Vector& lambda);
/// L_i(x) = lambda_i x_i + kappa_i x_i^3 / 3, Jacobian diag(lambda_i + kappa_i x_i^2).
NonlinearGain cubic_gain(const Vector& lambda, const Vector& kappa);

/// Largest |J(x) - finite-difference Jacobian of L| over the probe points,
/// relative to max(1, |J|).
double jacobian_mismatch(const NonlinearGain& gain, std::span<const Vector> probes);

/// tau_hat = z - L(x)
Vector ndob_estimate(const Vector& z, const Vector& x, const NonlinearGain& gain);

/// z' = dL/dx (f_n(x) + g_n(x) u - tau_hat). Throws DivergenceError if the
/// gain or nominal model evaluates to a non-finite value.
Vector ndob_zdot(const Vector& z, const Vector& x, double u, const plants::NonlinearPlant& plant,
                 const NonlinearGain& gain);

class NonlinearDob {
 public:
  /// Checks the Jacobian against finite differences of L at `probes`
  /// (tolerance tol::kJacobianCheck) and that it is positive definite there.
  NonlinearDob(NonlinearGain gain, Vector z0, std::span<const Vector> probes);
  /// z(0) = L(x0)
  static NonlinearDob at_rest(NonlinearGain gain, const Vector& x0, std::span<const Vector> probes);

  const NonlinearGain& gain() const { return gain_; }
  Vector z;

  Vector estimate(const Vector& x) const { return ndob_estimate(z, x, gain_); }
  Vector zdot(const Vector& x, double u, const plants::NonlinearPlant& plant) const {
    return ndob_zdot(z, x, u, plant, gain_);
  }

 private:
  NonlinearGain gain_;
};

}  // namespace dob::observers
