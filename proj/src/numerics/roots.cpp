#include "dob/numerics/roots.hpp"

#include "dob/error.hpp"
#include "dob/numerics/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dob::numerics {
namespace {

using cplx = std::complex<double>;

cplx eval_monic(const std::vector<double>& monic, cplx z) {
  cplx acc = 1.0;
  for (std::size_t i = 1; i < monic.size(); ++i) {
    acc = acc * z + monic[i];
  }
  return acc;
}

// Fujiwara bound on root magnitude of a monic polynomial.
double root_radius(const std::vector<double>& monic) {
  const std::size_t n = monic.size() - 1;
  double r = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    double a = std::abs(monic[i]);
    if (i == n) {
      a /= 2.0;
    }
    r = std::max(r, std::pow(a, 1.0 / static_cast<double>(i)));
  }
  return std::max(2.0 * r, 1e-3);
}

// Largest |p(r)| relative to max(max|c_i|, sum |c_i| |r|^i). The second term
// is the size of the rounding error of Horner evaluation itself, which
// dominates for roots of large magnitude.
double max_residual(const Polynomial& p, const std::vector<cplx>& roots) {
  const auto& c = p.coeffs();
  const double max_coeff = p.max_abs_coeff();
  double worst = 0.0;
  for (const auto& r : roots) {
    const double m = std::abs(r);
    double scale = 0.0;
    for (double ci : c) {
      scale = scale * m + std::abs(ci);
    }
    worst = std::max(worst, std::abs(p(r)) / std::max(max_coeff, scale));
  }
  return worst;
}

std::vector<cplx> durand_kerner(const Polynomial& p) {
  const int n = p.degree();
  std::vector<double> monic(p.coeffs());
  const double lead = monic.front();
  for (double& c : monic) {
    c /= lead;
  }

  if (n == 1) {
    return {cplx(-monic[1], 0.0)};
  }

  const double radius = root_radius(monic);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
  }

    std::vector<cplx> best = z;
  double best_residual = max_residual(p, z);

  for (int iter = 0; iter < tol::kRootIterationCap; ++iter) {
    double worst_update = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      cplx denom = 1.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) {
          denom *= z[i] - z[j];
        }
      }
      if (denom == cplx(0.0)) {
        // coincident iterates; nudge apart and keep going
        denom = cplx(1e-14 * std::max(1.0, std::abs(z[i])), 0.0);
      }
      const cplx delta = eval_monic(monic, z[i]) / denom;
      z[i] -= delta;
      worst_update = std::max(worst_update, std::abs(delta) / std::max(1.0, std::abs(z[i])));
    }
    const double res = max_residual(p, z);
    if (res < best_residual) {
      best_residual = res;
      best = z;
    }
    if (worst_update <= tol::kRootUpdate) {
      return z;
    }
  }

  if (best_residual <= tol::kRootResidual) {
    return best;
  }
  throw ConvergenceError("poly_roots: Durand-Kerner did not converge in " +
                             std::to_string(tol::kRootIterationCap) + " iterations for " + p.to_string(),
                         best);
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const Polynomial& p) {
  if (p.is_zero()) {
    throw InvalidInput("poly_roots: zero polynomial");
  }
  if (p.degree() < 1) {
    throw InvalidInput("poly_roots: constant polynomial has no roots");
  }

  // Split off exact roots at the origin.
  std::vector<double> c = p.coeffs();
  std::vector<cplx> roots;
  while (c.size() > 1 && c.back() == 0.0) {
    c.pop_back();
    roots.emplace_back(0.0, 0.0);
  }
  Polynomial reduced(std::move(c));
  if (reduced.degree() >= 1) {
    auto rest = durand_kerner(reduced);
    roots.insert(roots.end(), rest.begin(), rest.end());
  }
  return roots;
}

}  // namespace dob::numerics
