#pragma once

#include "dob/numerics/linalg.hpp"

namespace dob::plants {

using numerics::Matrix;
using numerics::Vector;

/// Planar revolute-revolute arm. Joint angles are measured from the
/// horizontal; gravity acts along -y.
struct ArmParameters {
  double m1 = 1.0, m2 = 1.0;          // kg
  double l1 = 1.0, l2 = 1.0;          // m
  double lc1 = 0.5, lc2 = 0.5;        // centroid offsets, m
  double i1 = 1.0 / 12.0, i2 = 1.0 / 12.0;  // link + rotor inertia about the centroid, kg m^2
  double gravity = 9.81;              // m/s^2

  void validate() const;
};

struct TwoLinkArm {
  ArmParameters actual;
  ArmParameters nominal;
};

Matrix mass_matrix(const ArmParameters& p, const Vector& q);
/// Christoffel-form Coriolis matrix; M' - 2C is skew-symmetric.
Matrix coriolis_matrix(const ArmParameters& p, const Vector& q, const Vector& qdot);
Vector gravity_vector(const ArmParameters& p, const Vector& q);
double kinetic_energy(const ArmParameters& p, const Vector& q, const Vector& qdot);
double potential_energy(const ArmParameters& p, const Vector& q);

/// qddot = M(q)^-1 (tau - tau_dis - C(q, qdot) qdot - g(q)) with the actual
/// parameters. Throws DivergenceError for a non-finite state.
Vector manipulator_dynamics(const TwoLinkArm& arm, const Vector& q, const Vector& qdot, const Vector& tau,
                            const Vector& tau_dis);

/// Lumped disturbance as seen through the nominal model:
///   tau_dis = tau - M_n qddot - C_n qdot - g_n.
Vector manipulator_lumped_disturbance(const ArmParameters& nominal, const Vector& q, const Vector& qdot,
                                      const Vector& qddot, const Vector& tau);

}  // namespace dob::plants
