#pragma once

#include "dob/numerics/linalg.hpp"

#include <vector>

namespace dob::plants {

using numerics::Matrix;
using numerics::Vector;

/// Autonomous exosystem x_tau' = A_tau x_tau, tau_d = C_tau x_tau. Used as a
/// signal generator for test disturbances.
struct DisturbanceModel {
  Matrix a_tau;   // m x m
  Matrix c_tau;   // n x m
  Vector x_tau0;  // m

  DisturbanceModel() = default;
  DisturbanceModel(Matrix a, Matrix c, Vector x0);

  Eigen::Index state_dim() const { return a_tau.rows(); }
  Eigen::Index output_dim() const { return c_tau.rows(); }

  /// No exosystem states; the output is identically zero of dimension n.
  static DisturbanceModel none(Eigen::Index n);
  /// A_tau = 0, tau_d(t) = value.
  static DisturbanceModel constant(const Vector& value);
  /// direction * (c_0 + c_1 t + ... + c_d t^d), realized as a (d+1)-Jordan chain.
  static DisturbanceModel polynomial(const std::vector<double>& coeffs, const Vector& direction);
  /// direction * amplitude * sin(omega t + phase), realized as a 2x2 rotation block.
  static DisturbanceModel sinusoid(double amplitude, double omega, double phase, const Vector& direction);
  /// Block-diagonal stack of exosystems with a common output dimension; outputs add.
  static DisturbanceModel sum(const std::vector<DisturbanceModel>& terms);
};

struct DisturbanceSample {
  Vector value;
  bool used_fallback = false;  // some block needed a numeric matrix exponential
};

/// e^{A_tau t} for the exosystem, in closed form for zero, nilpotent Jordan
/// and 2x2 rotation diagonal blocks. Any other block falls back to a numeric
/// matrix exponential and sets `used_fallback`.
Matrix exosystem_transition(const Matrix& a_tau, double t, bool* used_fallback = nullptr);

/// tau_d(t) = C_tau e^{A_tau t} x_tau0, for t >= 0.
DisturbanceSample disturbance_signal(const DisturbanceModel& m, double t);

}  // namespace dob::plants
