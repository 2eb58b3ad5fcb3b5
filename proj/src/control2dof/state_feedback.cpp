#include "dob/control2dof/state_feedback.hpp"

#include "dob/error.hpp"

namespace dob::control {

double sfb_with_cancellation(const Vector& x, double tau_hat, const Vector& k) {
  if (x.size() != k.size()) {
    throw InvalidInput("sfb_with_cancellation: K and x differ in size");
  }
  return -k.dot(x) + tau_hat;
}

double sfb_with_cancellation(const plants::LtiPlant& plant, const Vector& x, double tau_hat, const Vector& k) {
  if (!plant.uncertainty_is_matched()) {
    throw UnsupportedConfiguration(
        "state feedback with cancellation needs a matched plant; mismatched channels are not handled");
  }
  return sfb_with_cancellation(x, tau_hat, k);
}

Matrix closed_loop_matrix(const Matrix& a_n, const Vector& b_n, const Vector& k) {
  if (a_n.rows() != a_n.cols() || b_n.size() != a_n.rows() || k.size() != a_n.rows()) {
    throw InvalidInput("closed_loop_matrix: inconsistent dimensions");
  }
  return a_n - b_n * k.transpose();
}

}  // namespace dob::control
