#include "dob/observers/nonlinear.hpp"

#include "dob/error.hpp"
#include "dob/numerics/tolerances.hpp"

#include <cmath>

namespace dob::observers {

NonlinearGain linear_gain(const Vector& lambda) {
  NonlinearGain g;
  g.value = [lambda](const Vector& x) -> Vector { return lambda.cwiseProduct(x); };
  g.jacobian = [lambda](const Vector&) -> Matrix { return lambda.asDiagonal(); };
  return g;
}

NonlinearGain cubic_gain(const Vector& lambda, const Vector& kappa) {
  if (lambda.size() != kappa.size()) {
    throw InvalidInput("cubic_gain: lambda and kappa differ in size");
  }
  NonlinearGain g;
  g.value = [lambda, kappa](const Vector& x) -> Vector {
    return lambda.cwiseProduct(x) + kappa.cwiseProduct(x.array().cube().matrix()) / 3.0;
  };
  g.jacobian = [lambda, kappa](const Vector& x) -> Matrix {
    return (lambda + kappa.cwiseProduct(x.cwiseAbs2())).asDiagonal();
  };
  return g;
}

double jacobian_mismatch(const NonlinearGain& gain, std::span<const Vector> probes) {
  double worst = 0.0;
  for (const auto& x : probes) {
    const Matrix j = gain.jacobian(x);
    Matrix fd(j.rows(), j.cols());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(k)));
      Vector xp = x;
      Vector xm = x;
      xp(k) += h;
      xm(k) -= h;
      fd.col(k) = (gain.value(xp) - gain.value(xm)) / (2.0 * h);
    }
    const double scale = std::max(1.0, j.cwiseAbs().maxCoeff());
    worst = std::max(worst, (j - fd).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

Vector ndob_estimate(const Vector& z, const Vector& x, const NonlinearGain& gain) {
  if (z.size() != x.size()) {
    throw InvalidInput("ndob_estimate: z and x differ in size");
  }
  return z - gain.value(x);
}

Vector ndob_zdot(const Vector& z, const Vector& x, double u, const plants::NonlinearPlant& plant,
                 const NonlinearGain& gain) {
  const Matrix j = gain.jacobian(x);
  if (!j.allFinite()) {
    throw DivergenceError("ndob_zdot: observer gain Jacobian is not finite", 0.0);
  }
  return j * (plant.nominal_drift(x, u) - ndob_estimate(z, x, gain));
}

NonlinearDob::NonlinearDob(NonlinearGain gain, Vector z0, std::span<const Vector> probes)
    : z(std::move(z0)), gain_(std::move(gain)) {
  if (!gain_.value || !gain_.jacobian) {
    throw InvalidInput("NonlinearDob: gain and Jacobian must both be provided");
  }
  if (jacobian_mismatch(gain_, probes) > numerics::tol::kJacobianCheck) {
    throw InvalidInput("NonlinearDob: Jacobian does not match finite differences of the gain");
  }
  for (const auto& x : probes) {
    if (!(numerics::min_symmetric_eigenvalue(gain_.jacobian(x)) > 0.0)) {
      throw InvalidInput("NonlinearDob: gain Jacobian is not positive definite at a probe point");
    }
  }
}

NonlinearDob NonlinearDob::at_rest(NonlinearGain gain, const Vector& x0, std::span<const Vector> probes) {
  Vector z0 = gain.value(x0);
  return {std::move(gain), std::move(z0), probes};
}

}  // namespace dob::observers
