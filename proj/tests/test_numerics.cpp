#include "oracles.hpp"

#include "dob/error.hpp"
#include "dob/format.hpp"
#include "dob/freqdomain/root_locus.hpp"
#include "dob/numerics/integrate.hpp"
#include "dob/numerics/linalg.hpp"
#include "dob/numerics/polynomial.hpp"
#include "dob/numerics/roots.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dob;
using numerics::Matrix;
using numerics::Polynomial;
using numerics::Vector;
using cplx = std::complex<double>;

TEST_CASE("polynomial construction strips leading zeros") {
  const Polynomial p{0.0, 0.0, 2.0, 1.0};
  CHECK(p.degree() == 1);
  CHECK(p.leading() == 2.0);
  CHECK(Polynomial{0.0, 0.0}.is_zero());
  CHECK(Polynomial{0.0}.degree() == 0);
  CHECK_THROWS_AS(Polynomial({1.0, NAN}), InvalidInput);
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial a{1.0, 2.0};   // s + 2
  const Polynomial b{1.0, -3.0};  // s - 3
  CHECK(a * b == Polynomial{1.0, -1.0, -6.0});
  CHECK(a + b == Polynomial{2.0, -1.0});
  CHECK((a - a).is_zero());
  CHECK(a.pow(3) == Polynomial{1.0, 6.0, 12.0, 8.0});
  CHECK(Polynomial{3.0, 2.0, 1.0}.derivative() == Polynomial{6.0, 2.0});
  const auto dm = Polynomial{1.0, 0.0, -1.0}.divmod(Polynomial{1.0, 1.0});
  CHECK(dm.quotient == Polynomial{1.0, -1.0});
  CHECK(dm.remainder.is_zero());
  CHECK(Polynomial{1.0, 2.0, 3.0}(2.0) == doctest::Approx(11.0));
  CHECK(Polynomial{1.0, 2.0, 3.0}.coeff_of(0) == 3.0);
  CHECK(Polynomial{1.0, 2.0, 3.0}.coeff_of(5) == 0.0);
}

TEST_CASE("poly_roots on small examples") {
  auto r = numerics::poly_roots(Polynomial{1.0, 3.0, 2.0});
  REQUIRE(r.size() == 2);
  CHECK(oracle::root_set_distance(r, {cplx(-1, 0), cplx(-2, 0)}) < 1e-12);

  r = numerics::poly_roots(Polynomial{1.0, 100.0});
  REQUIRE(r.size() == 1);
  CHECK(r[0].real() == doctest::Approx(-100.0).epsilon(1e-15));

  CHECK_THROWS_AS(numerics::poly_roots(Polynomial{0.0}), InvalidInput);
  CHECK_THROWS_AS(numerics::poly_roots(Polynomial{4.0}), InvalidInput);
}

TEST_CASE("poly_roots residual contract and companion-matrix oracle on the locus cubic") {
  for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
    const auto p = freq::abc_characteristic(100.0, 14.0, 50.0, alpha);
    const auto r = numerics::poly_roots(p);
    REQUIRE(r.size() == 3);
    for (const auto& x : r) {
      CHECK(std::abs(p(x)) <= 1e-8 * p.max_abs_coeff());
    }
    CHECK(oracle::root_set_distance(r, oracle::companion_roots(p.coeffs())) < 1e-8);
  }
}

TEST_CASE("poly_roots handles exact zero roots and repeated roots") {
  auto r = numerics::poly_roots(Polynomial{1.0, 2.0, 0.0, 0.0});
  REQUIRE(r.size() == 3);
  CHECK(oracle::root_set_distance(r, {cplx(0, 0), cplx(0, 0), cplx(-2, 0)}) < 1e-12);

  const auto p = Polynomial{1.0, 50.0}.pow(4);
  r = numerics::poly_roots(p);
  REQUIRE(r.size() == 4);
  for (const auto& x : r) {
    CHECK(std::abs(p(x)) <= 1e-8 * p.max_abs_coeff());
  }
}

TEST_CASE("property: roots of a polynomial built from roots round-trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int degree = 1 + trial % 6;
    std::vector<cplx> roots;
    while (static_cast<int>(roots.size()) < degree) {
      const bool pair = degree - static_cast<int>(roots.size()) >= 2 && (trial + roots.size()) % 2 == 0;
      const cplx c(u(rng), pair ? std::abs(u(rng)) + 0.5 : 0.0);
      bool separated = true;
      for (const auto& x : roots) {
        separated = separated && std::abs(x - c) > 0.5 && std::abs(x - std::conj(c)) > 0.5;
      }
      if (!separated) {
        continue;
      }
      roots.push_back(c);
      if (pair) {
        roots.push_back(std::conj(c));
      }
    }
    const auto p = Polynomial::from_roots(roots);
    CHECK(oracle::root_set_distance(numerics::poly_roots(p), roots) < 1e-8);
  }
}

TEST_CASE("solve_lyapunov closed-form cases") {
  Matrix p = numerics::solve_lyapunov(-Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2));
  CHECK((p - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  p = numerics::solve_lyapunov(Matrix::Constant(1, 1, -2.0), Matrix::Constant(1, 1, 4.0));
  CHECK(p(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("solve_lyapunov random stable 3x3 residual and positivity") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a(3, 3);
    for (int i = 0; i < 9; ++i) {
      a.data()[i] = n01(rng);
    }
    // shift to make it Hurwitz
    const double shift = std::max(0.0, numerics::eigenvalues(a).empty() ? 0.0 : [&] {
      double m = -1e300;
      for (const auto& e : numerics::eigenvalues(a)) {
        m = std::max(m, e.real());
      }
      return m;
    }()) + 0.5;
    a -= shift * Matrix::Identity(3, 3);
    Matrix r(3, 3);
    for (int i = 0; i < 9; ++i) {
      r.data()[i] = n01(rng);
    }
    const Matrix q = r * r.transpose() + Matrix::Identity(3, 3);
    const Matrix p = numerics::solve_lyapunov(a, q);
    const double residual = (a.transpose() * p + p * a + q).cwiseAbs().maxCoeff();
    CHECK(residual <= 1e-9 * q.cwiseAbs().maxCoeff());
    CHECK(numerics::lyapunov_residual(a, p, q) == doctest::Approx(residual));
    for (int k = 0; k < 100; ++k) {
      Vector x(3);
      x << n01(rng), n01(rng), n01(rng);
      CHECK(x.dot(p * x) > 0.0);
    }
  }
}

TEST_CASE("solve_lyapunov error categories") {
  const Matrix q = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(numerics::solve_lyapunov(Matrix::Identity(2, 2), q), InfeasibleError);
  Matrix asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(numerics::solve_lyapunov(-Matrix::Identity(2, 2), asym), InvalidInput);
  CHECK_THROWS_AS(numerics::solve_lyapunov(-Matrix::Identity(2, 2), -q), InvalidInput);
}

TEST_CASE("rk4_step trivial and analytic cases") {
  const numerics::Derivative zero = [](double, const Vector& x) { return Vector(Vector::Zero(x.size())); };
  Vector x(2);
  x << 1.0, -3.0;
  CHECK(numerics::rk4_step(zero, x, 0.0, 0.1) == x);

  const numerics::Derivative decay = [](double, const Vector& v) { return Vector(-v); };
  Vector y = Vector::Ones(1);
  for (int i = 0; i < 100; ++i) {
    y = numerics::rk4_step(decay, y, 0.01 * i, 0.01);
  }
  CHECK(std::abs(y(0) - std::exp(-1.0)) <= 1e-9);

  CHECK_THROWS_AS(numerics::rk4_step(decay, y, 0.0, 0.0), InvalidInput);
}

TEST_CASE("rk4_step on a linear system matches the series matrix exponential") {
  Matrix a(3, 3);
  a << 0.0, 1.0, 0.0, -4.0, -0.4, 1.0, 0.0, 0.0, -2.0;
  const numerics::Derivative f = [&](double, const Vector& v) { return Vector(a * v); };
  Vector x0(3);
  x0 << 1.0, 0.0, 0.5;
  Vector x = x0;
  const int steps = 1000;
  for (int i = 0; i < steps; ++i) {
    x = numerics::rk4_step(f, x, i * 1e-3, 1e-3);
  }
  const Vector exact = oracle::expm_series(a, 1.0) * x0;
  CHECK((x - exact).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("property: rk4 global error shrinks at fourth order") {
  const numerics::Derivative decay = [](double, const Vector& v) { return Vector(-v); };
  auto global_error = [&](int steps) {
    const double h = 1.0 / steps;
    Vector y = Vector::Ones(1);
    for (int i = 0; i < steps; ++i) {
      y = numerics::rk4_step(decay, y, i * h, h);
    }
    return std::abs(y(0) - std::exp(-1.0));
  };
  for (int steps : {5, 10, 20, 40}) {
    CHECK(global_error(steps) / global_error(2 * steps) >= 15.0);
  }
}

TEST_CASE("rk4_step reports divergence with the stage time") {
  const numerics::Derivative blowup = [](double t, const Vector& v) {
    return t > 0.05 ? Vector(Vector::Constant(v.size(), NAN)) : Vector(v);
  };
  try {
    numerics::rk4_step(blowup, Vector::Ones(1), 0.0, 0.1);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.time() > 0.05);
    CHECK(e.time() <= 0.1);
  }
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5e17}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0) == "1");
}
