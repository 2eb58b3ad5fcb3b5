#include "oracles.hpp"

#include "dob/error.hpp"
#include "dob/freqdomain/filters.hpp"
#include "dob/freqdomain/response.hpp"
#include "dob/numerics/integrate.hpp"
#include "dob/plants/disturbance.hpp"
#include "dob/plants/lti_plant.hpp"
#include "dob/plants/nonlinear.hpp"
#include "dob/plants/servo.hpp"
#include "dob/plants/two_link_arm.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace dob;
using numerics::Matrix;
using numerics::Vector;
using plants::DisturbanceModel;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) {
    out(i++) = x;
  }
  return out;
}

}  // namespace

TEST_CASE("servo alpha") {
  CHECK(plants::servo_alpha({0.01, 0.01, 0.2, 0.2, 1000.0}) == 1.0);
  CHECK(plants::servo_alpha({0.01, 0.02, 0.2, 0.2, 1000.0}) == doctest::Approx(2.0));
  CHECK(plants::servo_alpha({0.01, 0.01, 0.2, 0.4, 1000.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(plants::ServoPlant(0.0, 1.0, 1.0, 1.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(plants::ServoPlant(1.0, 1.0, 1.0, 1.0, -1.0), InvalidInput);
}

TEST_CASE("servo dynamics") {
  const plants::ServoPlant p(0.02, 0.02, 0.5, 0.5, 1000.0);
  CHECK(plants::servo_dynamics(p, Vector::Zero(3), 0.0, 0.0).isZero(0.0));
  const Vector d = plants::servo_dynamics(p, vec({0.3, 0.0, 0.0}), 2.0, 0.0);
  CHECK(d(1) == doctest::Approx(0.5 * 2.0 / 0.02));
  CHECK(plants::servo_dynamics(p, vec({0.0, 5.0, 5.0}), 2.0, 0.0)(1) == doctest::Approx(d(1)));

  // velocity filter: 1 - 1/e of a velocity step after one time constant
  const numerics::Derivative filter = [&](double, const Vector& x) { return plants::servo_dynamics(p, x, 0.0, 0.0); };
  Vector x = vec({0.0, 1.0, 0.0});
  for (int i = 0; i < 100; ++i) {
    x = numerics::rk4_step(filter, x, i * 1e-5, 1e-5);
  }
  CHECK(x(2) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));

  // lumped disturbance with exact nominal values is the external torque
  CHECK(plants::servo_lumped_disturbance(p, 1.5, 0.7) == doctest::Approx(0.7));
}

TEST_CASE("servo loop assembled block by block matches the closed-form sensitivity") {
  const double g_v = 1000.0;
  for (double g : {100.0, 300.0}) {
    const plants::ServoPlant nominal(0.01, 0.01, 0.2, 0.2, g_v);
    const auto blocks = plants::servo_dob_sensitivity(nominal, g);
    const auto closed = freq::servo_sensitivity(g_v, g, 1.0);
    for (double w : freq::logspace(1e-2, 1e6, 300)) {
      CHECK(std::abs(blocks.at_frequency(w) - closed.at_frequency(w)) < 1e-10);
    }
    const plants::ServoPlant heavy(0.01, 0.02, 0.2, 0.25, g_v);
    const auto b2 = plants::servo_dob_sensitivity(heavy, g);
    const auto c2 = freq::servo_sensitivity(g_v, g, plants::servo_alpha(heavy));
    for (double w : freq::logspace(1e-2, 1e6, 300)) {
      CHECK(std::abs(b2.at_frequency(w) - c2.at_frequency(w)) < 1e-10);
    }
  }
}

TEST_CASE("disturbance signals in closed form") {
  const auto c = DisturbanceModel::constant(vec({5.0}));
  const double first = plants::disturbance_signal(c, 0.0).value(0);
  CHECK(first == 5.0);
  for (double t : {0.1, 1.0, 17.3, 1e6}) {
    const auto s = plants::disturbance_signal(c, t);
    CHECK(s.value(0) == first);  // bit-identical
    CHECK_FALSE(s.used_fallback);
  }

  const auto sine = DisturbanceModel::sinusoid(1.0, 10.0, 0.0, vec({1.0}));
  for (double t : {0.0, 0.05, 0.3, 2.0}) {
    CHECK(plants::disturbance_signal(sine, t).value(0) == doctest::Approx(std::sin(10.0 * t)).epsilon(1e-12));
  }

  const auto quad = DisturbanceModel::polynomial({1.5, -2.0, 0.75}, vec({1.0, 2.0}));
  for (double t : {0.0, 0.4, 1.0, 3.0}) {
    const auto s = plants::disturbance_signal(quad, t);
    const double expect = 1.5 - 2.0 * t + 0.75 * t * t;
    CHECK(s.value(0) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(s.value(1) == doctest::Approx(2.0 * expect).epsilon(1e-12));
    const Vector via_series = quad.c_tau * oracle::expm_series(quad.a_tau, t) * quad.x_tau0;
    CHECK((s.value - via_series).cwiseAbs().maxCoeff() <= 1e-10);
  }

  CHECK_THROWS_AS(plants::disturbance_signal(c, -1.0), InvalidInput);
}

TEST_CASE("sums of exosystems add and unsupported blocks fall back") {
  const auto sum = DisturbanceModel::sum({DisturbanceModel::constant(vec({1.0})),
                                          DisturbanceModel::sinusoid(2.0, 3.0, 0.5, vec({1.0}))});
  CHECK(sum.state_dim() == 3);
  const double t = 0.7;
  CHECK(plants::disturbance_signal(sum, t).value(0) == doctest::Approx(1.0 + 2.0 * std::sin(3.0 * t + 0.5)));

  Matrix a(2, 2);
  a << -1.0, 0.3, 0.0, -2.0;
  const DisturbanceModel decaying(a, Matrix::Identity(2, 2), vec({1.0, 1.0}));
  const auto s = plants::disturbance_signal(decaying, 0.8);
  CHECK(s.used_fallback);
  const Vector expect = oracle::expm_series(a, 0.8) * vec({1.0, 1.0});
  CHECK((s.value - expect).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(DisturbanceModel(Matrix::Zero(2, 2), Matrix::Zero(1, 3), Vector::Zero(2)), InvalidInput);
}

TEST_CASE("uncertain LTI plant bookkeeping") {
  Matrix a(2, 2), an(2, 2);
  a << 0.0, 1.0, -2.0, -0.5;
  an << 0.0, 1.0, -1.5, -0.4;
  const plants::LtiPlant p(a, an, vec({0.0, 0.8}), vec({0.0, 1.0}));
  CHECK(p.uncertainty_is_matched());
  const Vector x = vec({0.3, -1.2});
  const Vector td = vec({0.0, 0.25});
  const double u = 1.7;
  const Vector lumped = p.lumped_disturbance(x, u, td);
  CHECK((lumped - ((an - a) * x + (vec({0.0, 1.0}) - vec({0.0, 0.8})) * u + td)).norm() < 1e-15);
  // true and nominal descriptions agree
  CHECK((p.derivative(x, u, td) - (an * x + p.b_n() * u - lumped)).norm() < 1e-14);

  Matrix a_off = a;
  a_off(0, 0) = 0.3;
  CHECK_FALSE(plants::LtiPlant(a_off, an, vec({0.0, 0.8}), vec({0.0, 1.0})).uncertainty_is_matched());
  CHECK_THROWS_AS(plants::LtiPlant(a, an, vec({0.0, 1.0}), Vector::Zero(2)), InvalidInput);
  CHECK_THROWS_AS(plants::LtiPlant(a, an, vec({0.0, 1.0, 2.0}), vec({0.0, 1.0})), InvalidInput);
  CHECK(plants::matched_component(vec({0.0, 3.0}), vec({0.0, 2.0})) == doctest::Approx(1.5));
}

TEST_CASE("nonlinear plant bookkeeping") {
  plants::PendulumParameters actual{1.3, 0.2, 0.9};
  const auto pend = plants::pendulum(actual);
  const Vector x = vec({0.4, -0.7});
  const Vector td = vec({0.0, 0.1});
  const double u = 0.6;
  const Vector lumped = pend.lumped_disturbance(x, u, td);
  CHECK((pend.derivative(x, u, td) - (pend.nominal_drift(x, u) - lumped)).norm() < 1e-15);
  CHECK(pend.f_n(x)(1) == doctest::Approx(-std::sin(0.4)));

  Matrix a(1, 1);
  a << -2.0;
  const auto lin = plants::from_lti(plants::LtiPlant(a, a, vec({1.0}), vec({1.0})));
  CHECK(lin.derivative(vec({1.0}), 3.0, vec({0.5}))(0) == doctest::Approx(0.5));

  plants::NonlinearPlant broken = pend;
  broken.f_n = [](const Vector&) { return vec({NAN, 0.0}); };
  CHECK_THROWS_AS(broken.nominal_drift(x, u), DivergenceError);
}

TEST_CASE("two-link arm: inertia positive definite over a grid") {
  const plants::ArmParameters p;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double q1 = -std::numbers::pi + 2.0 * std::numbers::pi * i / 19.0;
      const double q2 = -std::numbers::pi + 2.0 * std::numbers::pi * j / 19.0;
      const Matrix m = plants::mass_matrix(p, vec({q1, q2}));
      CHECK((m - m.transpose()).norm() == 0.0);
      CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("two-link arm: gravity-compensated equilibrium") {
  plants::TwoLinkArm arm;
  const Vector q = vec({0.4, -1.1});
  const Vector tau_dis = vec({0.3, -0.2});
  const Vector tau = plants::gravity_vector(arm.actual, q) + tau_dis;
  CHECK(plants::manipulator_dynamics(arm, q, Vector::Zero(2), tau, tau_dis).cwiseAbs().maxCoeff() < 1e-13);
  CHECK_THROWS_AS(plants::manipulator_dynamics(arm, vec({NAN, 0.0}), Vector::Zero(2), tau, tau_dis), DivergenceError);
}

TEST_CASE("two-link arm: M' - 2C is skew-symmetric") {
  const plants::ArmParameters p{1.3, 0.8, 1.1, 0.9, 0.6, 0.4, 0.12, 0.07, 9.81};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector q = vec({u(rng), u(rng)});
    const Vector qd = vec({u(rng), u(rng)});
    const double h = 1e-6;
    const Matrix mdot = (plants::mass_matrix(p, q + h * qd) - plants::mass_matrix(p, q - h * qd)) / (2.0 * h);
    const Matrix n = mdot - 2.0 * plants::coriolis_matrix(p, q, qd);
    CHECK(std::abs(qd.dot(n * qd)) <= 1e-9 * std::max(1.0, qd.squaredNorm()));
  }
}

TEST_CASE("two-link arm: energy is conserved without gravity or input") {
  plants::TwoLinkArm arm;
  arm.actual.gravity = 0.0;
  arm.nominal.gravity = 0.0;
  const numerics::Derivative f = [&](double, const Vector& x) {
    Vector d(4);
    d << x.tail(2), plants::manipulator_dynamics(arm, x.head(2), x.tail(2), Vector::Zero(2), Vector::Zero(2));
    return d;
  };
  Vector x = vec({0.3, -0.8, 1.5, -2.0});
  const double e0 = plants::kinetic_energy(arm.actual, x.head(2), x.tail(2));
  const double h = 1e-4;
  double worst = 0.0;
  for (int i = 0; i < 50000; ++i) {
    x = numerics::rk4_step(f, x, i * h, h);
    if (i % 100 == 0) {
      const double e = plants::kinetic_energy(arm.actual, x.head(2), x.tail(2));
      worst = std::max(worst, std::abs(e - e0) / e0);
    }
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("two-link arm: nominal lumped disturbance recovers the injected torque") {
  plants::TwoLinkArm arm;
  const Vector q = vec({0.2, 0.9});
  const Vector qd = vec({-0.4, 1.1});
  const Vector tau = vec({2.0, -1.0});
  const Vector td = vec({0.5, 0.25});
  const Vector qdd = plants::manipulator_dynamics(arm, q, qd, tau, td);
  CHECK((plants::manipulator_lumped_disturbance(arm.nominal, q, qd, qdd, tau) - td).norm() < 1e-12);
}
