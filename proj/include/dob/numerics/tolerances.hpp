#pragma once

// Numeric tolerances shared by the whole library. Everything that compares
// against a threshold reads it from here.
namespace dob::numerics::tol {

// Durand-Kerner
inline constexpr int kRootIterationCap = 200;
inline constexpr double kRootUpdate = 1e-12;    // relative to max(1, |root|)
inline constexpr double kRootResidual = 1e-8;   // |p(r)| relative to max(max|c_i|, sum |c_i| |r|^i)

// Lyapunov solve: ||A'P + PA + Q||_max <= kLyapunovResidual * ||Q||_max
inline constexpr double kLyapunovResidual = 1e-9;
inline constexpr double kSymmetry = 1e-12;       // relative, for "is symmetric" checks
inline constexpr double kSingularPivot = 1e-13;  // reciprocal condition estimate

// Rational simplification: roots closer than this (relative) are cancelled.
inline constexpr double kCancelMatch = 1e-9;

// Frequency-domain grids.
inline constexpr double kUnwrapJumpDeg = 180.0;
inline constexpr int kMarginPointsPerDecade = 400;
inline constexpr int kMarginBisectionSteps = 80;
inline constexpr double kPoleOnAxis = 1e-12;

// Nonlinear observer Jacobian finite-difference check.
inline constexpr double kJacobianCheck = 1e-5;

// Manipulator observer: M_n condition number above this is refused.
inline constexpr double kMaxInertiaCondition = 1e12;

}  // namespace dob::numerics::tol
