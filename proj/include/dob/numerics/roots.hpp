#pragma once

#include "dob/numerics/polynomial.hpp"

#include <complex>
#include <vector>

namespace dob::numerics {

/// All `degree` roots of p (with multiplicity), by Durand-Kerner iteration on
/// the monic normalization. Exact zero roots are split off first.
///
/// Throws InvalidInput for the zero or constant polynomial and
/// ConvergenceError (carrying the best iterate) if the iteration cap is hit
/// before the residual contract is met. The residual of each root is
/// |p(r)| <= 1e-8 max(max|c_i|, sum |c_i| |r|^i); for |r| <= 1 this is the
/// plain 1e-8 max|c_i| bound, and for larger roots it tracks the rounding
/// error of evaluating p at r.
std::vector<std::complex<double>> poly_roots(const Polynomial& p);

}  // namespace dob::numerics
