#include "dob/observers/manipulator.hpp"

#include "dob/error.hpp"
#include "dob/numerics/tolerances.hpp"

#include <Eigen/Eigenvalues>

namespace dob::observers {

Vector manip_dob_estimate(const Vector& z, const Vector& qdot, double gain) {
  if (z.size() != qdot.size()) {
    throw InvalidInput("manip_dob_estimate: z and qdot differ in size");
  }
  return z - gain * qdot;
}

Vector manip_dob_zdot(const Vector& z, const Vector& qdot, const Vector& tau, const Matrix& mass,
                      const Vector& coriolis_qdot, const Vector& gravity, double gain) {
  if (!(gain > 0.0)) {
    throw InvalidInput("manipulator DOb gain must be positive");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(mass, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > numerics::tol::kMaxInertiaCondition) {
    throw NumericalError("manipulator DOb: nominal inertia matrix is singular or ill-conditioned");
  }
  const Vector rhs = tau - coriolis_qdot - gravity - manip_dob_estimate(z, qdot, gain);
  return gain * mass.ldlt().solve(rhs);
}

Vector manip_dob_zdot(const Vector& z, const Vector& q, const Vector& qdot, const Vector& tau,
                      const plants::ArmParameters& nominal, double gain) {
  return manip_dob_zdot(z, qdot, tau, plants::mass_matrix(nominal, q),
                        plants::coriolis_matrix(nominal, q, qdot) * qdot, plants::gravity_vector(nominal, q), gain);
}

Matrix manip_gain_matrix(const Matrix& mass, double gain) { return gain * mass.inverse(); }

}  // namespace dob::observers
