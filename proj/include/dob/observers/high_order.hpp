#pragma once

#include "dob/observers/first_order.hpp"

#include <vector>

namespace dob::observers {

/// Gains placing every error-dynamics root at -g_dob:
///   (lambda + g)^k = lambda^k + L_1 lambda^{k-1} + ... + L_k,
/// i.e. L_j = C(k, j) g^j.
std::vector<double> hdob_gains_from_bandwidth(int order, double g_dob);

/// k-th order DOb estimating tau_dis and its first k-1 derivatives:
///   estimate_j = z_j - L_j x,   j = 1..k.
struct HighOrderDob {
  std::vector<double> gains;  // L_1..L_k
  std::vector<Vector> z;      // z_1..z_k

  HighOrderDob(std::vector<double> gains, std::vector<Vector> z0);
  static HighOrderDob from_bandwidth(int order, double g_dob, const Vector& x0);
  /// z_j(0) = L_j x(0): all estimates start at zero.
  static HighOrderDob at_rest(std::vector<double> gains, const Vector& x0);

  int order() const { return static_cast<int>(gains.size()); }
  /// [tau_hat, tau_hat', ..., tau_hat^(k-1)]
  std::vector<Vector> estimates(const Vector& x) const;
};

/// z_j' = L_j (A_n x + b_n u - tau_hat) + estimate_{j+1}  for j < k,
/// z_k' = L_k (A_n x + b_n u - tau_hat).
std::vector<Vector> hdob_zdots(const HighOrderDob& dob, const Vector& x, double u, const NominalLinearModel& nominal);

}  // namespace dob::observers
