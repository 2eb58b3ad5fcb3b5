#pragma once

#include "dob/numerics/linalg.hpp"

#include <optional>
#include <ostream>
#include <vector>

namespace dob::control {

using numerics::Matrix;
using numerics::Vector;

/// V = x'Px with (A_n - b_n K)'P + P(A_n - b_n K) = -Q. Along the matched
/// closed loop
///   V' <= -(min eig Q - 1)|x|^2 + |P b_n (tau_hat - tau_dis)|^2,
/// which only bounds anything when min eig Q > 1; otherwise `bound_vacuous`
/// is set and the bound checks refuse to assert.
struct LyapunovCertificate {
  Vector k;
  Matrix p;
  Matrix q;
  double ell = 0.0;        // shrink factor for the attracting set, 0 < ell < min eig Q - 1
  double residual = 0.0;   // max |A'P + PA + Q| / max(1, max |Q|)
  double min_eig_q = 0.0;
  bool bound_vacuous = false;
};

/// Builds the certificate. `ell` defaults to 0.5 (min eig Q - 1); an explicit
/// value outside the valid interval is InvalidInput. A non-Hurwitz closed
/// loop raises InfeasibleError.
LyapunovCertificate make_certificate(const Matrix& a_n, const Vector& b_n, const Vector& k, const Matrix& q,
                                     std::optional<double> ell = std::nullopt);

/// Radius on |x| outside which V decreases:
///   sqrt(1 / ell) |P b_n err|,  err = tau_hat - tau_dis (matched scalar).
/// The certificate's ell is used unless one is given.
double omega_radius(const LyapunovCertificate& cert, const Vector& b_n, double err,
                    std::optional<double> ell = std::nullopt);

/// Uniformly sampled closed-loop history.
struct StateHistory {
  std::vector<double> t;
  std::vector<Vector> x;
  std::vector<double> matched_error;  // tau_hat - tau_dis along b_n
};

struct VdotSample {
  double t;
  double v;
  double vdot;   // central difference
  double rhs;    // -(min eig Q - 1)|x|^2 + |P b_n err|^2
  double margin; // rhs + slack - vdot
  bool pass;
};

struct VdotReport {
  bool indeterminate = false;       // certificate is bound-vacuous
  double slack = 0.0;               // 3 h^2 max |V'''|
  double worst_violation = 0.0;     // max(0, vdot - rhs) over samples
  std::vector<VdotSample> samples;  // interior samples only

  bool all_pass() const;
};

/// Checks the V' inequality at every interior sample. V' is the central
/// difference of V, so it carries an O(h^2) error of at most h^2/6 |V'''|;
/// the check allows 3 h^2 max|V'''| with V''' from third differences.
/// Fewer than 3 samples or a non-uniform grid is InvalidInput.
VdotReport vdot_check(const StateHistory& hist, const LyapunovCertificate& cert, const Vector& b_n);

// t,V,Vdot,rhs_eq27,margin,pass
void write_vdot_csv(std::ostream& os, const VdotReport& report);

}  // namespace dob::control
