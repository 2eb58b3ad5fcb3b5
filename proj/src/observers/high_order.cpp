#include "dob/observers/high_order.hpp"

#include "dob/error.hpp"

#include <cmath>

namespace dob::observers {

std::vector<double> hdob_gains_from_bandwidth(int order, double g_dob) {
  if (order < 1) {
    throw InvalidInput("high-order DOb: order must be >= 1");
  }
  if (!(g_dob > 0.0) || !std::isfinite(g_dob)) {
    throw InvalidInput("high-order DOb: bandwidth must be positive");
  }
  std::vector<double> gains;
  gains.reserve(static_cast<std::size_t>(order));
  double binom = 1.0;
  double power = 1.0;
  for (int j = 1; j <= order; ++j) {
    binom = binom * (order - j + 1) / j;
    power *= g_dob;
    gains.push_back(binom * power);
  }
  return gains;
}

HighOrderDob::HighOrderDob(std::vector<double> gains_, std::vector<Vector> z0) : gains(std::move(gains_)), z(std::move(z0)) {
  if (gains.empty() || gains.size() != z.size()) {
    throw InvalidInput("high-order DOb: need one auxiliary vector per gain");
  }
  for (double l : gains) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw InvalidInput("high-order DOb: gains must be positive");
    }
  }
  for (const auto& zj : z) {
    if (zj.size() != z.front().size()) {
      throw InvalidInput("high-order DOb: auxiliary vectors differ in size");
    }
  }
}

HighOrderDob HighOrderDob::from_bandwidth(int order, double g_dob, const Vector& x0) {
  return at_rest(hdob_gains_from_bandwidth(order, g_dob), x0);
}

HighOrderDob HighOrderDob::at_rest(std::vector<double> gains, const Vector& x0) {
  std::vector<Vector> z0;
  z0.reserve(gains.size());
  for (double l : gains) {
    z0.emplace_back(l * x0);
  }
  return {std::move(gains), std::move(z0)};
}

std::vector<Vector> HighOrderDob::estimates(const Vector& x) const {
  std::vector<Vector> out;
  out.reserve(gains.size());
  for (std::size_t j = 0; j < gains.size(); ++j) {
    out.push_back(dob1_estimate(z[j], x, gains[j]));
  }
  return out;
}

std::vector<Vector> hdob_zdots(const HighOrderDob& dob, const Vector& x, double u, const NominalLinearModel& nominal) {
  if (nominal.a_n.rows() != x.size() || nominal.b_n.size() != x.size()) {
    throw InvalidInput("hdob_zdots: nominal model does not match the state size");
  }
  const auto est = dob.estimates(x);
  const Vector residual = nominal.a_n * x + nominal.b_n * u - est.front();
  std::vector<Vector> zdots;
  zdots.reserve(est.size());
  for (std::size_t j = 0; j < est.size(); ++j) {
    Vector d = dob.gains[j] * residual;
    if (j + 1 < est.size()) {
      d += est[j + 1];
    }
    zdots.push_back(std::move(d));
  }
  return zdots;
}

}  // namespace dob::observers
