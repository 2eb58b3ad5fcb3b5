#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string_view>
#include <vector>

namespace dob::numerics {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Throws InvalidInput naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);
bool all_finite(const Matrix& m);

std::vector<std::complex<double>> eigenvalues(const Matrix& a);
bool is_hurwitz(const Matrix& a);
bool is_symmetric(const Matrix& a, double rel_tol);
/// Smallest eigenvalue of the symmetric part (A + A')/2.
double min_symmetric_eigenvalue(const Matrix& a);
bool is_positive_definite(const Matrix& a);

/// Solves A'P + PA = -Q for P.
///
/// Kronecker vectorization, (I (x) A' + A' (x) I) vec(P) = -vec(Q), solved by
/// LU with partial pivoting. Intended for n <= 6 or so; cost is O(n^6).
///
/// Requires A Hurwitz and Q symmetric positive definite (InfeasibleError /
/// InvalidInput otherwise). A singular Kronecker system raises NumericalError.
Matrix solve_lyapunov(const Matrix& a_cl, const Matrix& q);

/// max |A'P + PA + Q|
double lyapunov_residual(const Matrix& a_cl, const Matrix& p, const Matrix& q);

}  // namespace dob::numerics
