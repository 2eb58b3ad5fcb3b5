#pragma once

#include "dob/numerics/polynomial.hpp"

#include <complex>
#include <vector>

namespace dob::freq {

using numerics::Polynomial;

/// Real-coefficient rational function num(s)/den(s) in the Laplace variable.
///
/// The denominator is normalized to be monic on construction. Arithmetic keeps
/// the raw polynomial products; common factors are only removed by an explicit
/// call to simplified(), which cancels numerator/denominator roots that agree
/// to within tol::kCancelMatch.
class RationalTransfer {
 public:
  /// Throws DegenerateModel if den is identically zero.
  RationalTransfer(Polynomial num, Polynomial den);

  static RationalTransfer constant(double k);
  static RationalTransfer zero() { return constant(0.0); }
  static RationalTransfer one() { return constant(1.0); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_proper() const { return num_.is_zero() || num_.degree() <= den_.degree(); }
  bool is_strictly_proper() const { return num_.is_zero() || num_.degree() < den_.degree(); }
  int relative_degree() const { return den_.degree() - num_.degree(); }

  std::complex<double> operator()(std::complex<double> s) const;
  std::complex<double> at_frequency(double omega) const { return (*this)(std::complex<double>(0.0, omega)); }

  std::vector<std::complex<double>> poles() const;
  std::vector<std::complex<double>> zeros() const;
  bool is_stable() const;

  RationalTransfer simplified() const;

  friend RationalTransfer operator+(const RationalTransfer& a, const RationalTransfer& b);
  friend RationalTransfer operator-(const RationalTransfer& a, const RationalTransfer& b);
  friend RationalTransfer operator*(const RationalTransfer& a, const RationalTransfer& b);
  /// Throws DegenerateModel when b is the zero transfer.
  friend RationalTransfer operator/(const RationalTransfer& a, const RationalTransfer& b);
  friend RationalTransfer operator*(double k, const RationalTransfer& a);

 private:
  Polynomial num_;
  Polynomial den_;
};

}  // namespace dob::freq
