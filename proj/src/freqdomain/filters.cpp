#include "dob/freqdomain/filters.hpp"

#include "dob/error.hpp"

#include <cmath>
#include <string>

namespace dob::freq {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidInput(std::string(name) + " must be positive and finite");
  }
}

void require_proper(const RationalTransfer& tf, const char* name) {
  if (!tf.is_proper()) {
    throw InvalidInput(std::string(name) + " must be proper");
  }
}

}  // namespace

RationalTransfer make_qfilter(int order, double g_dob) {
  if (order < 1) {
    throw InvalidInput("Q-filter order must be >= 1");
  }
  require_positive(g_dob, "g_dob");
  const Polynomial base{1.0, g_dob};
  return {Polynomial::constant(std::pow(g_dob, order)), base.pow(order)};
}

RationalTransfer sensitivity_dob(const RationalTransfer& q, const RationalTransfer& delta_w) {
  require_proper(q, "Q");
  require_proper(delta_w, "deltaW");
  // Q = nq/dq, dW = nw/dw:
  //   S = (dq - nq) dw / (dq dw + nw nq)
  const auto& nq = q.num();
  const auto& dq = q.den();
  const auto& nw = delta_w.num();
  const auto& dw = delta_w.den();
  const Polynomial den = dq * dw + nw * nq;
  if (den.is_zero()) {
    throw DegenerateModel("sensitivity: closed-loop denominator vanishes");
  }
  return RationalTransfer((dq - nq) * dw, den).simplified();
}

RationalTransfer complementary_dob(const RationalTransfer& q, const RationalTransfer& delta_w) {
  require_proper(q, "Q");
  require_proper(delta_w, "deltaW");
  const auto& nq = q.num();
  const auto& dq = q.den();
  const auto& nw = delta_w.num();
  const auto& dw = delta_w.den();
  const Polynomial den = dq * dw + nw * nq;
  if (den.is_zero()) {
    throw DegenerateModel("complementary sensitivity: closed-loop denominator vanishes");
  }
  return RationalTransfer((dw + nw) * nq, den).simplified();
}

RationalTransfer servo_sensitivity(double g_v, double g_dob, double alpha) {
  require_positive(g_v, "g_v");
  require_positive(g_dob, "g_dob");
  require_positive(alpha, "alpha");
  return {Polynomial{1.0, g_v, 0.0}, Polynomial{1.0, g_v, alpha * g_v * g_dob}};
}

RationalTransfer closed_loop_ref_tf(const RationalTransfer& c, const RationalTransfer& gn, const RationalTransfer& q,
                                    const RationalTransfer& delta_w) {
  // a PD controller is improper on its own; only the loop C Gn has to be proper
  if (c.num().degree() + gn.num().degree() > c.den().degree() + gn.den().degree()) {
    throw InvalidInput("C Gn must be proper");
  }
  require_proper(q, "Q");
  require_proper(delta_w, "deltaW");
  // With C = nc/dc, Gn = ng/dg, Q = nq/dq, dW = nw/dw and the common dw removed:
  //   num = nc ng (dw + nw) dq
  //   den = (dw dq + nw nq) dc dg + num
  const Polynomial forward = c.num() * gn.num() * (delta_w.den() + delta_w.num()) * q.den();
  const Polynomial den = (delta_w.den() * q.den() + delta_w.num() * q.num()) * c.den() * gn.den() + forward;
  if (den.is_zero()) {
    throw DegenerateModel("closed-loop reference transfer: denominator vanishes");
  }
  return RationalTransfer(forward, den).simplified();
}

RationalTransfer inner_loop_tf(double alpha, double g_dob) {
  require_positive(alpha, "alpha");
  require_positive(g_dob, "g_dob");
  return {Polynomial{alpha, alpha * g_dob}, Polynomial{1.0, alpha * g_dob}};
}

RationalTransfer abc_loop_tf(double kp, double kd, double alpha, double g_dob) {
  require_positive(kp, "Kp");
  require_positive(kd, "Kd");
  const RationalTransfer pd{Polynomial{kd, kp}, Polynomial::constant(1.0)};
  const RationalTransfer plant{Polynomial::constant(1.0), Polynomial{1.0, 0.0, 0.0}};
  return pd * inner_loop_tf(alpha, g_dob) * plant;
}

}  // namespace dob::freq
