#include "dob/numerics/linalg.hpp"

#include "dob/error.hpp"
#include "dob/numerics/tolerances.hpp"

#include <Eigen/Eigenvalues>

#include <string>

namespace dob::numerics {

bool all_finite(const Matrix& m) { return m.allFinite(); }

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + " has non-finite entries");
  }
}

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw InvalidInput("eigenvalues: matrix is not square");
  }
  Eigen::EigenSolver<Matrix> es(a, false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigenvalues: solver failed");
  }
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

bool is_hurwitz(const Matrix& a) {
  for (const auto& l : eigenvalues(a)) {
    if (!(l.real() < 0.0)) {
      return false;
    }
  }
  return true;
}

bool is_symmetric(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) {
    return false;
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

double min_symmetric_eigenvalue(const Matrix& a) {
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_positive_definite(const Matrix& a) {
  if (!is_symmetric(a, 1e-9)) {
    return false;
  }
  Eigen::LLT<Matrix> llt(0.5 * (a + a.transpose()));
  return llt.info() == Eigen::Success;
}

Matrix solve_lyapunov(const Matrix& a_cl, const Matrix& q) {
  const Eigen::Index n = a_cl.rows();
  if (a_cl.cols() != n || q.rows() != n || q.cols() != n || n == 0) {
    throw InvalidInput("solve_lyapunov: A and Q must be square and of equal size");
  }
  require_finite(a_cl, "solve_lyapunov: A");
  require_finite(q, "solve_lyapunov: Q");
  if (!is_symmetric(q, tol::kSymmetry)) {
    throw InvalidInput("solve_lyapunov: Q is not symmetric");
  }
  if (!is_positive_definite(q)) {
    throw InvalidInput("solve_lyapunov: Q is not positive definite");
  }
  if (!is_hurwitz(a_cl)) {
    throw InfeasibleError("solve_lyapunov: closed-loop matrix is not Hurwitz");
  }

  // vec is column-major: vec(A'P) = (I (x) A') vec(P), vec(PA) = (A' (x) I) vec(P).
  const Eigen::Index nn = n * n;
  Matrix kron = Matrix::Zero(nn, nn);
  const Matrix at = a_cl.transpose();
  for (Eigen::Index i = 0; i < n; ++i) {
    kron.block(i * n, i * n, n, n) += at;
    for (Eigen::Index j = 0; j < n; ++j) {
      kron.block(i * n, j * n, n, n) += at(i, j) * Matrix::Identity(n, n);
    }
  }
  const Vector rhs = -Eigen::Map<const Vector>(q.data(), nn);

  Eigen::PartialPivLU<Matrix> lu(kron);
  if (lu.rcond() < tol::kSingularPivot) {
    throw NumericalError("solve_lyapunov: Kronecker system is singular");
  }
  const Vector vec_p = lu.solve(rhs);
  Matrix p = Eigen::Map<const Matrix>(vec_p.data(), n, n);
  p = 0.5 * (p + p.transpose()).eval();
  if (!p.allFinite()) {
    throw NumericalError("solve_lyapunov: non-finite solution");
  }
  return p;
}

double lyapunov_residual(const Matrix& a_cl, const Matrix& p, const Matrix& q) {
  return (a_cl.transpose() * p + p * a_cl + q).cwiseAbs().maxCoeff();
}

}  // namespace dob::numerics
