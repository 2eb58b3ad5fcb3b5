#pragma once

#include "dob/numerics/linalg.hpp"

namespace dob::plants {

using numerics::Matrix;
using numerics::Vector;

/// Known (nominal) part of a single-input linear model, x' = A_n x + b_n u.
struct NominalLinearModel {
  Matrix a_n;
  Vector b_n;
};

/// Uncertain single-input LTI plant with its nominal model:
///   x' = A x + b u - tau_d          (true)
///   x' = A_n x + b_n u - tau_dis    (nominal, lumped disturbance)
/// so tau_dis = (A_n - A) x + (b_n - b) u + tau_d.
class LtiPlant {
 public:
  LtiPlant(Matrix a, Matrix a_n, Vector b, Vector b_n);

  Eigen::Index dim() const { return a_.rows(); }
  const Matrix& a() const { return a_; }
  const Matrix& a_n() const { return a_n_; }
  const Vector& b() const { return b_; }
  const Vector& b_n() const { return b_n_; }
  NominalLinearModel nominal() const { return {a_n_, b_n_}; }

  Vector derivative(const Vector& x, double u, const Vector& tau_d) const;
  Vector lumped_disturbance(const Vector& x, double u, const Vector& tau_d) const;

  /// True when every parametric mismatch acts through span(b_n).
  bool uncertainty_is_matched() const;

 private:
  Matrix a_, a_n_;
  Vector b_, b_n_;
};

/// Whether v lies in span(b_n) (relative tolerance).
bool in_input_channel(const Vector& v, const Vector& b_n, double rel_tol = 1e-12);

/// Scalar coordinate of v along b_n: b_n'v / b_n'b_n.
double matched_component(const Vector& v, const Vector& b_n);

}  // namespace dob::plants
