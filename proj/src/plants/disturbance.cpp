#include "dob/plants/disturbance.hpp"

#include "dob/error.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace dob::plants {

DisturbanceModel::DisturbanceModel(Matrix a, Matrix c, Vector x0)
    : a_tau(std::move(a)), c_tau(std::move(c)), x_tau0(std::move(x0)) {
  const auto m = a_tau.rows();
  if (a_tau.cols() != m || c_tau.cols() != m || x_tau0.size() != m) {
    throw InvalidInput("DisturbanceModel: inconsistent dimensions");
  }
  numerics::require_finite(a_tau, "DisturbanceModel A_tau");
  numerics::require_finite(c_tau, "DisturbanceModel C_tau");
  numerics::require_finite(x_tau0, "DisturbanceModel x_tau0");
}

DisturbanceModel DisturbanceModel::none(Eigen::Index n) { return {Matrix(0, 0), Matrix(n, 0), Vector(0)}; }

DisturbanceModel DisturbanceModel::constant(const Vector& value) {
  const auto n = value.size();
  return {Matrix::Zero(n, n), Matrix::Identity(n, n), value};
}

DisturbanceModel DisturbanceModel::polynomial(const std::vector<double>& coeffs, const Vector& direction) {
  if (coeffs.empty()) {
    throw InvalidInput("polynomial disturbance needs at least one coefficient");
  }
  const auto m = static_cast<Eigen::Index>(coeffs.size());
  Matrix a = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    a(i, i + 1) = 1.0;
  }
  // x_1(t) = sum_j x0_j t^j / j!, so x0_j = c_j j!
  Vector x0(m);
  double factorial = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (j > 0) {
      factorial *= static_cast<double>(j);
    }
    x0(j) = coeffs[static_cast<std::size_t>(j)] * factorial;
  }
  Matrix c = Matrix::Zero(direction.size(), m);
  c.col(0) = direction;
  return {a, c, x0};
}

DisturbanceModel DisturbanceModel::sinusoid(double amplitude, double omega, double phase, const Vector& direction) {
  Matrix a(2, 2);
  a << 0.0, omega, -omega, 0.0;
  Vector x0(2);
  x0 << amplitude * std::sin(phase), amplitude * std::cos(phase);
  Matrix c = Matrix::Zero(direction.size(), 2);
  c.col(0) = direction;
  return {a, c, x0};
}

DisturbanceModel DisturbanceModel::sum(const std::vector<DisturbanceModel>& terms) {
  if (terms.empty()) {
    throw InvalidInput("sum of disturbances needs at least one term");
  }
  const auto n = terms.front().output_dim();
  Eigen::Index m = 0;
  for (const auto& t : terms) {
    if (t.output_dim() != n) {
      throw InvalidInput("sum of disturbances: output dimensions differ");
    }
    m += t.state_dim();
  }
  Matrix a = Matrix::Zero(m, m);
  Matrix c = Matrix::Zero(n, m);
  Vector x0(m);
  Eigen::Index off = 0;
  for (const auto& t : terms) {
    const auto k = t.state_dim();
    a.block(off, off, k, k) = t.a_tau;
    c.block(0, off, n, k) = t.c_tau;
    x0.segment(off, k) = t.x_tau0;
    off += k;
  }
  return {a, c, x0};
}

namespace {

// Ends of the diagonal blocks of a: a block closes at i when no entry couples
// rows/cols <= i with rows/cols > i.
std::vector<Eigen::Index> block_ends(const Matrix& a) {
  const auto m = a.rows();
  std::vector<Eigen::Index> ends;
  Eigen::Index start = 0;
  Eigen::Index reach = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if ((a(i, j) != 0.0 || a(j, i) != 0.0) && j > reach) {
        reach = j;
      }
    }
    reach = std::max(reach, i);
    if (reach == i) {
      ends.push_back(i + 1);
      start = i + 1;
      reach = start;
    }
  }
  return ends;
}

bool is_nilpotent_chain(const Matrix& b) {
  const auto k = b.rows();
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const double expected = (j == i + 1) ? 1.0 : 0.0;
      if (b(i, j) != expected) {
        return false;
      }
    }
  }
  return true;
}

Matrix block_transition(const Matrix& b, double t, bool& fallback) {
  const auto k = b.rows();
  if (b.isZero(0.0)) {
    return Matrix::Identity(k, k);
  }
  if (is_nilpotent_chain(b)) {
    Matrix e = Matrix::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      double term = 1.0;
      for (Eigen::Index j = i; j < k; ++j) {
        e(i, j) = term;
        term *= t / static_cast<double>(j - i + 1);
      }
    }
    return e;
  }
  if (k == 2 && b(0, 0) == 0.0 && b(1, 1) == 0.0 && b(0, 1) == -b(1, 0)) {
    const double w = b(0, 1);
    const double c = std::cos(w * t);
    const double s = std::sin(w * t);
    Matrix e(2, 2);
    e << c, s, -s, c;
    return e;
  }
  fallback = true;
  return (b * t).exp();
}

}  // namespace

Matrix exosystem_transition(const Matrix& a_tau, double t, bool* used_fallback) {
  const auto m = a_tau.rows();
  Matrix e = Matrix::Zero(m, m);
  bool fallback = false;
  Eigen::Index start = 0;
  for (Eigen::Index end : block_ends(a_tau)) {
    const auto k = end - start;
    e.block(start, start, k, k) = block_transition(a_tau.block(start, start, k, k), t, fallback);
    start = end;
  }
  if (used_fallback != nullptr) {
    *used_fallback = fallback;
  }
  return e;
}

DisturbanceSample disturbance_signal(const DisturbanceModel& m, double t) {
  if (t < 0.0) {
    throw InvalidInput("disturbance_signal: t must be non-negative");
  }
  DisturbanceSample out;
  if (m.state_dim() == 0) {
    out.value = Vector::Zero(m.output_dim());
    return out;
  }
  if (m.a_tau.isZero(0.0)) {
    out.value = m.c_tau * m.x_tau0;
    return out;
  }
  const Matrix e = exosystem_transition(m.a_tau, t, &out.used_fallback);
  out.value = m.c_tau * (e * m.x_tau0);
  return out;
}

}  // namespace dob::plants
