#include "dob/freqdomain/rational_transfer.hpp"

#include "dob/error.hpp"
#include "dob/numerics/roots.hpp"
#include "dob/numerics/tolerances.hpp"

#include <cmath>

namespace dob::freq {

using numerics::poly_roots;

RationalTransfer::RationalTransfer(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw DegenerateModel("rational transfer with zero denominator");
  }
  const double lead = den_.leading();
  if (lead != 1.0) {
    num_ = num_.scaled(1.0 / lead);
    den_ = den_.scaled(1.0 / lead);
  }
}

RationalTransfer RationalTransfer::constant(double k) { return {Polynomial::constant(k), Polynomial::constant(1.0)}; }

std::complex<double> RationalTransfer::operator()(std::complex<double> s) const { return num_(s) / den_(s); }

std::vector<std::complex<double>> RationalTransfer::poles() const {
  if (den_.degree() < 1) {
    return {};
  }
  return poly_roots(den_);
}

std::vector<std::complex<double>> RationalTransfer::zeros() const {
  if (num_.is_zero() || num_.degree() < 1) {
    return {};
  }
  return poly_roots(num_);
}

bool RationalTransfer::is_stable() const {
  for (const auto& p : poles()) {
    if (!(p.real() < 0.0)) {
      return false;
    }
  }
  return true;
}

namespace {

using cplx = std::complex<double>;

bool roots_match(cplx a, cplx b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= numerics::tol::kCancelMatch * scale;
}

bool is_real_root(cplx r) { return std::abs(r.imag()) <= numerics::tol::kCancelMatch * std::max(1.0, std::abs(r)); }

// Real factor of the polynomial that vanishes at r (and its conjugate).
Polynomial factor_for(cplx r) {
  if (is_real_root(r)) {
    return Polynomial{1.0, -r.real()};
  }
  return Polynomial{1.0, -2.0 * r.real(), std::norm(r)};
}

}  // namespace

RationalTransfer RationalTransfer::simplified() const {
  if (num_.is_zero()) {
    return zero();
  }
  if (num_.degree() < 1 || den_.degree() < 1) {
    return *this;
  }
  auto zs = zeros();
  auto ps = poles();
  std::vector<bool> zero_used(zs.size(), false);
  std::vector<bool> pole_used(ps.size(), false);
  // Each side is divided by a factor built from its own roots, so every
  // division is exact up to rounding; the value changes only by the tiny
  // mismatch between the matched roots.
  std::vector<Polynomial> num_factors;
  std::vector<Polynomial> den_factors;

  for (std::size_t i = 0; i < zs.size(); ++i) {
    // complex pairs are handled through their upper half-plane member
    if (!is_real_root(zs[i]) && zs[i].imag() < 0.0) {
      continue;
    }
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (pole_used[j] || zero_used[i] || !roots_match(zs[i], ps[j])) {
        continue;
      }
      if (!is_real_root(zs[i])) {
        // Require the conjugates to match as well.
        std::size_t zc = zs.size();
        std::size_t pc = ps.size();
        for (std::size_t a = 0; a < zs.size(); ++a) {
          if (a != i && !zero_used[a] && roots_match(zs[a], std::conj(zs[i]))) {
            zc = a;
            break;
          }
        }
        for (std::size_t b = 0; b < ps.size(); ++b) {
          if (b != j && !pole_used[b] && roots_match(ps[b], std::conj(ps[j]))) {
            pc = b;
            break;
          }
        }
        if (zc == zs.size() || pc == ps.size()) {
          continue;
        }
        zero_used[zc] = true;
        pole_used[pc] = true;
      }
      zero_used[i] = true;
      pole_used[j] = true;
      num_factors.push_back(factor_for(zs[i]));
      den_factors.push_back(factor_for(ps[j]));
    }
  }

  Polynomial num = num_;
  Polynomial den = den_;
  for (const auto& f : num_factors) {
    num = num.divmod(f).quotient;
  }
  for (const auto& f : den_factors) {
    den = den.divmod(f).quotient;
  }
  return {num, den};
}

RationalTransfer operator+(const RationalTransfer& a, const RationalTransfer& b) {
  if (a.den() == b.den()) {
    return {a.num() + b.num(), a.den()};
  }
  return {a.num() * b.den() + b.num() * a.den(), a.den() * b.den()};
}

RationalTransfer operator-(const RationalTransfer& a, const RationalTransfer& b) { return a + (-1.0) * b; }

RationalTransfer operator*(const RationalTransfer& a, const RationalTransfer& b) {
  return {a.num() * b.num(), a.den() * b.den()};
}

RationalTransfer operator/(const RationalTransfer& a, const RationalTransfer& b) {
  if (b.is_zero()) {
    throw DegenerateModel("division by the zero transfer");
  }
  return {a.num() * b.den(), a.den() * b.num()};
}

RationalTransfer operator*(double k, const RationalTransfer& a) { return {a.num().scaled(k), a.den()}; }

}  // namespace dob::freq
