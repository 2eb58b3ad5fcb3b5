#include "dob/numerics/polynomial.hpp"

#include "dob/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dob::numerics {

Polynomial::Polynomial() : coeffs_{0.0} {}

Polynomial::Polynomial(std::vector<double> coeffs_descending) : coeffs_(std::move(coeffs_descending)) {
  normalize();
}

Polynomial::Polynomial(std::initializer_list<double> coeffs_descending) : coeffs_(coeffs_descending) {
  normalize();
}

void Polynomial::normalize() {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) {
      throw InvalidInput("polynomial coefficient is not finite");
    }
  }
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](double c) { return c != 0.0; });
  coeffs_.erase(coeffs_.begin(), first);
  if (coeffs_.empty()) {
    coeffs_.push_back(0.0);
  }
}

Polynomial Polynomial::constant(double c) { return Polynomial{c}; }

Polynomial Polynomial::s() { return Polynomial{1.0, 0.0}; }

Polynomial Polynomial::from_roots(std::span<const std::complex<double>> roots, double leading) {
  std::vector<std::complex<double>> acc{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i];
      next[i + 1] -= acc[i] * r;
    }
    acc = std::move(next);
  }
  std::vector<double> c(acc.size());
  std::transform(acc.begin(), acc.end(), c.begin(), [leading](auto v) { return leading * v.real(); });
  return Polynomial(std::move(c));
}

double Polynomial::coeff_of(int power) const {
  if (power < 0 || power > degree()) {
    return 0.0;
  }
  return coeffs_[static_cast<std::size_t>(degree() - power)];
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) {
    m = std::max(m, std::abs(c));
  }
  return m;
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (double c : coeffs_) {
    acc = acc * s + c;
  }
  return acc;
}

double Polynomial::operator()(double s) const {
  double acc = 0.0;
  for (double c : coeffs_) {
    acc = acc * s + c;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() == 0) {
    return Polynomial{};
  }
  std::vector<double> d;
  d.reserve(coeffs_.size() - 1);
  const int n = degree();
  for (int i = 0; i < n; ++i) {
    d.push_back(coeffs_[static_cast<std::size_t>(i)] * (n - i));
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::scaled(double k) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) {
    v *= k;
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::pow(int n) const {
  if (n < 0) {
    throw InvalidInput("negative polynomial power");
  }
  Polynomial result = constant(1.0);
  for (int i = 0; i < n; ++i) {
    result = result * *this;
  }
  return result;
}

Polynomial::DivMod Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) {
    throw InvalidInput("polynomial division by zero");
  }
  if (degree() < divisor.degree()) {
    return {Polynomial{}, *this};
  }
  std::vector<double> rem = coeffs_;
  const auto& d = divisor.coeffs_;
  const std::size_t qn = rem.size() - d.size() + 1;
  std::vector<double> quot(qn, 0.0);
  for (std::size_t i = 0; i < qn; ++i) {
    const double factor = rem[i] / d[0];
    quot[i] = factor;
    for (std::size_t j = 0; j < d.size(); ++j) {
      rem[i + j] -= factor * d[j];
    }
    rem[i] = 0.0;
  }
  std::vector<double> r(rem.begin() + static_cast<std::ptrdiff_t>(qn), rem.end());
  return {Polynomial(std::move(quot)), Polynomial(std::move(r))};
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  os.precision(12);
  const int n = degree();
  for (int i = 0; i <= n; ++i) {
    const double c = coeffs_[static_cast<std::size_t>(i)];
    if (i > 0) {
      os << (c < 0 ? " - " : " + ");
    } else if (c < 0) {
      os << "-";
    }
    os << std::abs(c);
    const int p = n - i;
    if (p == 1) {
      os << " s";
    } else if (p > 1) {
      os << " s^" << p;
    }
  }
  return os.str();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t n = std::max(ac.size(), bc.size());
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    c[n - ac.size() + i] += ac[i];
  }
  for (std::size_t i = 0; i < bc.size(); ++i) {
    c[n - bc.size() + i] += bc[i];
  }
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b.scaled(-1.0); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  std::vector<double> c(ac.size() + bc.size() - 1, 0.0);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    for (std::size_t j = 0; j < bc.size(); ++j) {
      c[i + j] += ac[i] * bc[j];
    }
  }
  return Polynomial(std::move(c));
}

}  // namespace dob::numerics
