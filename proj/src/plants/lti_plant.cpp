#include "dob/plants/lti_plant.hpp"

#include "dob/error.hpp"

namespace dob::plants {

LtiPlant::LtiPlant(Matrix a, Matrix a_n, Vector b, Vector b_n)
    : a_(std::move(a)), a_n_(std::move(a_n)), b_(std::move(b)), b_n_(std::move(b_n)) {
  const auto n = a_.rows();
  if (n == 0 || a_.cols() != n || a_n_.rows() != n || a_n_.cols() != n || b_.size() != n || b_n_.size() != n) {
    throw InvalidInput("LtiPlant: inconsistent dimensions");
  }
  numerics::require_finite(a_, "LtiPlant A");
  numerics::require_finite(a_n_, "LtiPlant A_n");
  numerics::require_finite(b_, "LtiPlant b");
  numerics::require_finite(b_n_, "LtiPlant b_n");
  if (b_n_.isZero(0.0)) {
    throw InvalidInput("LtiPlant: b_n must not be the zero vector");
  }
}

Vector LtiPlant::derivative(const Vector& x, double u, const Vector& tau_d) const { return a_ * x + b_ * u - tau_d; }

Vector LtiPlant::lumped_disturbance(const Vector& x, double u, const Vector& tau_d) const {
  return (a_n_ - a_) * x + (b_n_ - b_) * u + tau_d;
}

bool LtiPlant::uncertainty_is_matched() const {
  const Matrix da = a_n_ - a_;
  for (Eigen::Index j = 0; j < da.cols(); ++j) {
    if (!in_input_channel(da.col(j), b_n_)) {
      return false;
    }
  }
  return in_input_channel(b_n_ - b_, b_n_);
}

bool in_input_channel(const Vector& v, const Vector& b_n, double rel_tol) {
  const Vector residual = v - matched_component(v, b_n) * b_n;
  return residual.norm() <= rel_tol * std::max(1.0, v.norm());
}

double matched_component(const Vector& v, const Vector& b_n) { return b_n.dot(v) / b_n.squaredNorm(); }

}  // namespace dob::plants
