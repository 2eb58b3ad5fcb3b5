#pragma once

#include "dob/plants/lti_plant.hpp"

namespace dob::control {

using numerics::Matrix;
using numerics::Vector;

/// u = -K x + tau_hat, where tau_hat is the matched (scalar) disturbance
/// estimate. With the plant written x' = A_n x + b_n u - b_n tau_dis this gives
///   x' = (A_n - b_n K) x + b_n (tau_hat - tau_dis).
double sfb_with_cancellation(const Vector& x, double tau_hat, const Vector& k);

/// Same law, refusing plants whose uncertainty leaves the input channel
/// (UnsupportedConfiguration).
double sfb_with_cancellation(const plants::LtiPlant& plant, const Vector& x, double tau_hat, const Vector& k);

/// A_n - b_n K
Matrix closed_loop_matrix(const Matrix& a_n, const Vector& b_n, const Vector& k);

}  // namespace dob::control
