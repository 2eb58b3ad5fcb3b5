#pragma once

#include "dob/freqdomain/rational_transfer.hpp"

namespace dob::freq {

/// Q_k(s) = g^k / (s + g)^k. Unity DC gain, strictly proper.
RationalTransfer make_qfilter(int order, double g_dob);

/// Disturbance sensitivity of a DOb loop with multiplicative uncertainty dW:
///   S = (1 - Q) / (1 - Q + (1 + dW) Q).
/// The common denominator of Q is cancelled symbolically, so dW = 0 gives
/// exactly 1 - Q. Pass RationalTransfer::zero() for the nominal case.
RationalTransfer sensitivity_dob(const RationalTransfer& q, const RationalTransfer& delta_w);

/// T = (1 + dW) Q / (1 - Q + (1 + dW) Q), sharing the denominator of
/// sensitivity_dob so S + T = 1 holds coefficient-wise.
RationalTransfer complementary_dob(const RationalTransfer& q, const RationalTransfer& delta_w);

/// Sensitivity of the servo loop with a first-order DOb and a first-order
/// velocity-measurement filter:
///   S = s (s + g_v) / (s^2 + g_v s + alpha g_v g_dob).
RationalTransfer servo_sensitivity(double g_v, double g_dob, double alpha);

/// Reference-to-output transfer of the 2-DoF loop:
///   q/q_ref = C Gn (1 + dW) / (1 + dW Q + C Gn (1 + dW)).
/// C may be improper (PD) as long as the product C Gn is proper.
RationalTransfer closed_loop_ref_tf(const RationalTransfer& c, const RationalTransfer& gn, const RationalTransfer& q,
                                    const RationalTransfer& delta_w);

/// Acceleration inner loop with the DOb closed and ideal velocity
/// measurement: qdd/qdd_des = alpha (s + g) / (s + alpha g).
RationalTransfer inner_loop_tf(double alpha, double g_dob);

/// Open loop of the acceleration-based position controller:
///   L(s) = (Kd s + Kp) * inner_loop_tf(alpha, g) / s^2.
RationalTransfer abc_loop_tf(double kp, double kd, double alpha, double g_dob);

}  // namespace dob::freq
