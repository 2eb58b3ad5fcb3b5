#include "dob/plants/two_link_arm.hpp"

#include "dob/error.hpp"

#include <cmath>

namespace dob::plants {

void ArmParameters::validate() const {
  for (double v : {m1, m2, l1, l2, i1, i2}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidInput("ArmParameters: masses, lengths and inertias must be positive");
    }
  }
  for (double v : {lc1, lc2, gravity}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidInput("ArmParameters: centroid offsets and gravity must be non-negative");
    }
  }
}

Matrix mass_matrix(const ArmParameters& p, const Vector& q) {
  const double c2 = std::cos(q(1));
  const double m22 = p.m2 * p.lc2 * p.lc2 + p.i2;
  const double m12 = m22 + p.m2 * p.l1 * p.lc2 * c2;
  const double m11 = p.m1 * p.lc1 * p.lc1 + p.i1 + p.m2 * (p.l1 * p.l1 + p.lc2 * p.lc2 + 2.0 * p.l1 * p.lc2 * c2) + p.i2;
  Matrix m(2, 2);
  m << m11, m12, m12, m22;
  return m;
}

Matrix coriolis_matrix(const ArmParameters& p, const Vector& q, const Vector& qdot) {
  const double h = -p.m2 * p.l1 * p.lc2 * std::sin(q(1));
  Matrix c(2, 2);
  c << h * qdot(1), h * (qdot(0) + qdot(1)), -h * qdot(0), 0.0;
  return c;
}

Vector gravity_vector(const ArmParameters& p, const Vector& q) {
  const double c1 = std::cos(q(0));
  const double c12 = std::cos(q(0) + q(1));
  Vector g(2);
  g << (p.m1 * p.lc1 + p.m2 * p.l1) * p.gravity * c1 + p.m2 * p.lc2 * p.gravity * c12,
      p.m2 * p.lc2 * p.gravity * c12;
  return g;
}

double kinetic_energy(const ArmParameters& p, const Vector& q, const Vector& qdot) {
  return 0.5 * qdot.dot(mass_matrix(p, q) * qdot);
}

double potential_energy(const ArmParameters& p, const Vector& q) {
  return (p.m1 * p.lc1 + p.m2 * p.l1) * p.gravity * std::sin(q(0)) + p.m2 * p.lc2 * p.gravity * std::sin(q(0) + q(1));
}

Vector manipulator_dynamics(const TwoLinkArm& arm, const Vector& q, const Vector& qdot, const Vector& tau,
                            const Vector& tau_dis) {
  if (!q.allFinite() || !qdot.allFinite()) {
    throw DivergenceError("manipulator_dynamics: non-finite state", 0.0);
  }
  const auto& p = arm.actual;
  const Matrix m = mass_matrix(p, q);
  const Vector rhs = tau - tau_dis - coriolis_matrix(p, q, qdot) * qdot - gravity_vector(p, q);
  return m.ldlt().solve(rhs);
}

Vector manipulator_lumped_disturbance(const ArmParameters& nominal, const Vector& q, const Vector& qdot,
                                      const Vector& qddot, const Vector& tau) {
  return tau - mass_matrix(nominal, q) * qddot - coriolis_matrix(nominal, q, qdot) * qdot - gravity_vector(nominal, q);
}

}  // namespace dob::plants
