#pragma once

#include "dob/numerics/linalg.hpp"
#include "dob/plants/two_link_arm.hpp"

namespace dob::observers {

using numerics::Matrix;
using numerics::Vector;

/// tau_hat = z - L qdot
Vector manip_dob_estimate(const Vector& z, const Vector& qdot, double gain);

/// z' = L M_n^-1 (tau - C_n qdot - g_n - tau_hat), given the nominal model
/// already evaluated at the measured (q, qdot). Works for any joint count.
/// Throws NumericalError if cond(M_n) exceeds tol::kMaxInertiaCondition.
Vector manip_dob_zdot(const Vector& z, const Vector& qdot, const Vector& tau, const Matrix& mass,
                      const Vector& coriolis_qdot, const Vector& gravity, double gain);

/// Same, evaluating the nominal two-link model at (q, qdot).
Vector manip_dob_zdot(const Vector& z, const Vector& q, const Vector& qdot, const Vector& tau,
                      const plants::ArmParameters& nominal, double gain);

/// Effective error-dynamics gain L M_n^-1(q).
Matrix manip_gain_matrix(const Matrix& mass, double gain);

}  // namespace dob::observers
