#pragma once

#include "dob/numerics/linalg.hpp"
#include "dob/plants/lti_plant.hpp"

#include <functional>

namespace dob::plants {

using VectorField = std::function<Vector(const Vector&)>;

/// Control-affine nonlinear plant and its nominal model:
///   x' = f(x) + g(x) u - tau_d
///   x' = f_n(x) + g_n(x) u - tau_dis
/// with tau_dis = tau_d + f_n(x) - f(x) + (g_n(x) - g(x)) u.
struct NonlinearPlant {
  Eigen::Index dim = 0;
  VectorField f, f_n;
  VectorField g, g_n;

  Vector derivative(const Vector& x, double u, const Vector& tau_d) const;
  /// f_n(x) + g_n(x) u; throws DivergenceError if non-finite.
  Vector nominal_drift(const Vector& x, double u) const;
  Vector lumped_disturbance(const Vector& x, double u, const Vector& tau_d) const;
};

NonlinearPlant from_lti(const LtiPlant& p);

// theta'' = -omega0_sq sin(theta) - damping theta' + input_gain u
struct PendulumParameters {
  double omega0_sq = 1.0;
  double damping = 0.0;
  double input_gain = 1.0;
};

/// Pendulum with state [theta, theta_dot]; `nominal` defaults to the
/// undamped unit pendulum f_n = [x2, -sin x1], g_n = [0, 1].
NonlinearPlant pendulum(const PendulumParameters& actual, const PendulumParameters& nominal = {});

}  // namespace dob::plants
