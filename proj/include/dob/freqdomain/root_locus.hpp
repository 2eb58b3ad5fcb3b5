#pragma once

#include "dob/numerics/polynomial.hpp"

#include <complex>
#include <vector>

namespace dob::freq {

struct LocusRow {
  double alpha;
  std::vector<std::complex<double>> poles;  // sorted by imaginary part, then real part
};

/// Characteristic polynomial of the acceleration-based position loop with the
/// DOb inner loop alpha (s + g)/(s + alpha g) and PD outer loop Kd s + Kp:
///   s^2 (s + alpha g) + alpha (s + g)(Kd s + Kp).
numerics::Polynomial abc_characteristic(double kp, double kd, double g_dob, double alpha);

/// Closed-loop poles of abc_characteristic for every alpha in the grid.
std::vector<LocusRow> root_locus_alpha(double kp, double kd, double g_dob, const std::vector<double>& alpha_grid);

}  // namespace dob::freq
