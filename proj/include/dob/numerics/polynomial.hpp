#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace dob::numerics {

/// Real polynomial in the Laplace variable s, coefficients in descending degree.
///
/// Leading zeros are stripped on construction, so the leading coefficient is
/// nonzero unless the polynomial is identically zero (stored as `{0}`).
class Polynomial {
 public:
  Polynomial();
  explicit Polynomial(std::vector<double> coeffs_descending);
  Polynomial(std::initializer_list<double> coeffs_descending);

  static Polynomial constant(double c);
  static Polynomial s();
  /// (s - r_1)(s - r_2)... scaled by `leading`. Roots must be closed under
  /// conjugation; the imaginary residue of the product is discarded.
  static Polynomial from_roots(std::span<const std::complex<double>> roots, double leading = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double leading() const { return coeffs_.front(); }
  /// Coefficient of s^power (0 when power > degree).
  double coeff_of(int power) const;
  double max_abs_coeff() const;

  std::complex<double> operator()(std::complex<double> s) const;
  double operator()(double s) const;

  Polynomial derivative() const;
  Polynomial scaled(double k) const;
  Polynomial pow(int n) const;

  struct DivMod;
  DivMod divmod(const Polynomial& divisor) const;

  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double k, const Polynomial& p) { return p.scaled(k); }
  friend Polynomial operator-(const Polynomial& p) { return p.scaled(-1.0); }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void normalize();
  std::vector<double> coeffs_;
};

struct Polynomial::DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

}  // namespace dob::numerics
