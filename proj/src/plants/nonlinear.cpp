#include "dob/plants/nonlinear.hpp"

#include "dob/error.hpp"

#include <cmath>

namespace dob::plants {

Vector NonlinearPlant::derivative(const Vector& x, double u, const Vector& tau_d) const {
  return f(x) + g(x) * u - tau_d;
}

Vector NonlinearPlant::nominal_drift(const Vector& x, double u) const {
  Vector d = f_n(x) + g_n(x) * u;
  if (!d.allFinite()) {
    throw DivergenceError("nonlinear plant: nominal model is not finite at the current state", 0.0);
  }
  return d;
}

Vector NonlinearPlant::lumped_disturbance(const Vector& x, double u, const Vector& tau_d) const {
  return tau_d + f_n(x) - f(x) + (g_n(x) - g(x)) * u;
}

NonlinearPlant from_lti(const LtiPlant& p) {
  NonlinearPlant out;
  out.dim = p.dim();
  out.f = [a = p.a()](const Vector& x) -> Vector { return a * x; };
  out.f_n = [a = p.a_n()](const Vector& x) -> Vector { return a * x; };
  out.g = [b = p.b()](const Vector&) -> Vector { return b; };
  out.g_n = [b = p.b_n()](const Vector&) -> Vector { return b; };
  return out;
}

namespace {

VectorField pendulum_drift(PendulumParameters p) {
  return [p](const Vector& x) -> Vector {
    Vector d(2);
    d << x(1), -p.omega0_sq * std::sin(x(0)) - p.damping * x(1);
    return d;
  };
}

VectorField pendulum_input(PendulumParameters p) {
  return [p](const Vector&) -> Vector {
    Vector g(2);
    g << 0.0, p.input_gain;
    return g;
  };
}

}  // namespace

NonlinearPlant pendulum(const PendulumParameters& actual, const PendulumParameters& nominal) {
  NonlinearPlant out;
  out.dim = 2;
  out.f = pendulum_drift(actual);
  out.f_n = pendulum_drift(nominal);
  out.g = pendulum_input(actual);
  out.g_n = pendulum_input(nominal);
  return out;
}

}  // namespace dob::plants
