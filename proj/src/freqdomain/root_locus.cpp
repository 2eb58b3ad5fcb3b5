#include "dob/freqdomain/root_locus.hpp"

#include "dob/error.hpp"
#include "dob/numerics/roots.hpp"

#include <algorithm>
#include <cmath>

namespace dob::freq {

numerics::Polynomial abc_characteristic(double kp, double kd, double g_dob, double alpha) {
  if (!(kp > 0.0) || !(kd > 0.0) || !(g_dob > 0.0)) {
    throw InvalidInput("root locus: Kp, Kd and g_dob must be positive");
  }
  if (!(alpha > 0.0)) {
    throw InvalidInput("root locus: alpha must be positive");
  }
  using numerics::Polynomial;
  const Polynomial s2{1.0, 0.0, 0.0};
  return s2 * Polynomial{1.0, alpha * g_dob} + alpha * (Polynomial{1.0, g_dob} * Polynomial{kd, kp});
}

std::vector<LocusRow> root_locus_alpha(double kp, double kd, double g_dob, const std::vector<double>& alpha_grid) {
  std::vector<LocusRow> rows;
  rows.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    auto poles = numerics::poly_roots(abc_characteristic(kp, kd, g_dob, alpha));
    std::sort(poles.begin(), poles.end(), [](const auto& a, const auto& b) {
      if (a.imag() != b.imag()) {
        return a.imag() < b.imag();
      }
      return a.real() < b.real();
    });
    rows.push_back({alpha, std::move(poles)});
  }
  return rows;
}

}  // namespace dob::freq
