#include "dob/control2dof/certificate.hpp"

#include "dob/control2dof/state_feedback.hpp"
#include "dob/error.hpp"
#include "dob/format.hpp"
#include "dob/numerics/tolerances.hpp"

#include <algorithm>
#include <cmath>

namespace dob::control {

LyapunovCertificate make_certificate(const Matrix& a_n, const Vector& b_n, const Vector& k, const Matrix& q,
                                     std::optional<double> ell) {
  const Matrix a_cl = closed_loop_matrix(a_n, b_n, k);
  LyapunovCertificate c;
  c.k = k;
  c.q = q;
  c.p = numerics::solve_lyapunov(a_cl, q);
  c.residual = numerics::lyapunov_residual(a_cl, c.p, q) / std::max(1.0, q.cwiseAbs().maxCoeff());
  c.min_eig_q = numerics::min_symmetric_eigenvalue(q);
  c.bound_vacuous = !(c.min_eig_q > 1.0);
  if (ell) {
    if (c.bound_vacuous || !(*ell > 0.0) || !(*ell < c.min_eig_q - 1.0)) {
      throw InvalidInput("ell must lie in (0, min eig(Q) - 1)");
    }
    c.ell = *ell;
  } else if (!c.bound_vacuous) {
    c.ell = 0.5 * (c.min_eig_q - 1.0);
  }
  return c;
}

double omega_radius(const LyapunovCertificate& cert, const Vector& b_n, double err, std::optional<double> ell) {
  const double l = ell.value_or(cert.ell);
  if (cert.bound_vacuous || !(l > 0.0) || !(l < cert.min_eig_q - 1.0)) {
    throw InvalidInput("ell must lie in (0, min eig(Q) - 1)");
  }
  if (b_n.size() != cert.p.rows()) {
    throw InvalidInput("omega_radius: b_n size does not match the certificate");
  }
  return std::sqrt(1.0 / l) * (cert.p * b_n * err).norm();
}

bool VdotReport::all_pass() const {
  return !indeterminate && std::all_of(samples.begin(), samples.end(), [](const VdotSample& s) { return s.pass; });
}

VdotReport vdot_check(const StateHistory& hist, const LyapunovCertificate& cert, const Vector& b_n) {
  const std::size_t n = hist.t.size();
  if (n < 3 || hist.x.size() != n || hist.matched_error.size() != n) {
    throw InvalidInput("vdot_check needs at least 3 samples of t, x and the matched error");
  }
  const double h = hist.t[1] - hist.t[0];
  if (!(h > 0.0)) {
    throw InvalidInput("vdot_check: time grid must be increasing");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(hist.t[i] - hist.t[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(hist.t[i]))) {
      throw InvalidInput("vdot_check: time grid must be uniform");
    }
  }

  VdotReport report;
  report.indeterminate = cert.bound_vacuous;

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = hist.x[i].dot(cert.p * hist.x[i]);
  }
  double max_v3 = 0.0;
  for (std::size_t i = 0; i + 3 < n; ++i) {
    const double d3 = (v[i + 3] - 3.0 * v[i + 2] + 3.0 * v[i + 1] - v[i]) / (h * h * h);
    max_v3 = std::max(max_v3, std::abs(d3));
  }
  report.slack = 3.0 * h * h * max_v3;

  const Vector pb = cert.p * b_n;
  const double decay = cert.min_eig_q - 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    VdotSample s{};
    s.t = hist.t[i];
    s.v = v[i];
    s.vdot = (v[i + 1] - v[i - 1]) / (2.0 * h);
    s.rhs = -decay * hist.x[i].squaredNorm() + (pb * hist.matched_error[i]).squaredNorm();
    s.margin = s.rhs + report.slack - s.vdot;
    s.pass = !report.indeterminate && s.margin >= 0.0;
    report.worst_violation = std::max(report.worst_violation, s.vdot - s.rhs);
    report.samples.push_back(s);
  }
  return report;
}

void write_vdot_csv(std::ostream& os, const VdotReport& report) {
  os << "t,V,Vdot,rhs_eq27,margin,pass\n";
  for (const auto& s : report.samples) {
    os << format_double(s.t) << ',' << format_double(s.v) << ',' << format_double(s.vdot) << ','
       << format_double(s.rhs) << ',' << format_double(s.margin) << ',' << (s.pass ? 1 : 0) << '\n';
  }
}

}  // namespace dob::control
