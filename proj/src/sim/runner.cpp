#include "dob/sim/runner.hpp"

#include "dob/control2dof/abc.hpp"
#include "dob/control2dof/certificate.hpp"
#include "dob/control2dof/state_feedback.hpp"
#include "dob/error.hpp"
#include "dob/numerics/integrate.hpp"
#include "dob/observers/first_order.hpp"
#include "dob/observers/high_order.hpp"
#include "dob/observers/manipulator.hpp"
#include "dob/observers/nonlinear.hpp"
#include "dob/plants/lti_plant.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace dob::sim {
namespace {

struct Signals {
  Vector plant_dot;
  Vector measured;
  Vector u;
  Vector tau_d;
  Vector tau_dis;
  Vector tau_hat;
  std::vector<Vector> higher;
  Vector aux_dot;
};

// Uniform on [-1, 1) from the top 53 bits, identical on every platform.
double uniform_pm1(std::mt19937_64& rng) { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; }

class Model {
 public:
  explicit Model(const Scenario& s) : s_(s) {
    std::visit([this](const auto& p) { setup(p); }, s_.plant);
    exo_dim_ = s_.disturbance.state_dim();
    switch (s_.observer.kind) {
      case ObserverKind::none:
        aux_dim_ = 0;
        break;
      case ObserverKind::hdob:
        aux_dim_ = obs_dim_ * static_cast<Eigen::Index>(s_.observer.gains.size());
        break;
      default:
        aux_dim_ = obs_dim_;
    }
    if (s_.observer.kind == ObserverKind::ndob) {
      gain_ = observers::cubic_gain(s_.observer.lambda, s_.observer.kappa);
    }
    if (s_.controller.kind == ControllerKind::abc) {
      abc_.emplace(s_.controller.kp, s_.controller.kd);
    }
  }

  Eigen::Index plant_dim() const { return plant_dim_; }
  Eigen::Index noise_dim() const { return noise_dim_; }
  const std::vector<std::string>& state_names() const { return names_; }

  Vector initial_state() const {
    Vector x(plant_dim_ + aux_dim_ + exo_dim_);
    x.head(plant_dim_) = x0_;
    const Vector xo = observer_coordinates(measure(x0_, Vector::Zero(noise_dim_)));
    switch (s_.observer.kind) {
      case ObserverKind::none:
        break;
      case ObserverKind::dob1:
      case ObserverKind::manip_dob:
        x.segment(plant_dim_, aux_dim_) = s_.observer.gain * xo;
        break;
      case ObserverKind::hdob:
        for (std::size_t j = 0; j < s_.observer.gains.size(); ++j) {
          x.segment(plant_dim_ + static_cast<Eigen::Index>(j) * obs_dim_, obs_dim_) = s_.observer.gains[j] * xo;
        }
        break;
      case ObserverKind::ndob:
        x.segment(plant_dim_, aux_dim_) = gain_.value(xo);
        break;
    }
    x.tail(exo_dim_) = s_.disturbance.x_tau0;
    return x;
  }

  Signals evaluate(double t, const Vector& state, const Vector& noise) const {
    Signals sig;
    const Vector xp = state.head(plant_dim_);
    const Vector aux = state.segment(plant_dim_, aux_dim_);
    const Vector xt = state.tail(exo_dim_);
    sig.tau_d = exo_dim_ > 0 ? Vector(s_.disturbance.c_tau * xt) : Vector(Vector::Zero(dist_dim_));
    sig.measured = measure(xp, noise);
    const Vector xo = observer_coordinates(sig.measured);

    // estimates
    std::optional<observers::HighOrderDob> hdob;
    switch (s_.observer.kind) {
      case ObserverKind::none:
        sig.tau_hat = Vector::Zero(obs_dim_);
        break;
      case ObserverKind::dob1:
        sig.tau_hat = observers::dob1_estimate(aux, xo, s_.observer.gain);
        break;
      case ObserverKind::hdob: {
        std::vector<Vector> z;
        for (std::size_t j = 0; j < s_.observer.gains.size(); ++j) {
          z.emplace_back(aux.segment(static_cast<Eigen::Index>(j) * obs_dim_, obs_dim_));
        }
        hdob.emplace(s_.observer.gains, std::move(z));
        auto est = hdob->estimates(xo);
        sig.tau_hat = est.front();
        sig.higher.assign(std::make_move_iterator(est.begin() + 1), std::make_move_iterator(est.end()));
        break;
      }
      case ObserverKind::ndob:
        sig.tau_hat = observers::ndob_estimate(aux, xo, gain_);
        break;
      case ObserverKind::manip_dob:
        sig.tau_hat = observers::manip_dob_estimate(aux, xo, s_.observer.gain);
        break;
    }

    // control, plant and lumped disturbance
    double u_obs = 0.0;  // scalar input seen by a linear observer model
    if (const auto* lti = std::get_if<LtiPlantSpec>(&s_.plant)) {
      double u = 0.0;
      if (s_.controller.kind == ControllerKind::constant) {
        u = s_.controller.value(0);
      } else if (s_.controller.kind == ControllerKind::sfb) {
        u = control::sfb_with_cancellation(sig.measured, plants::matched_component(sig.tau_hat, lti->b_n),
                                           s_.controller.k);
      }
      sig.u = Vector::Constant(1, u);
      sig.plant_dot = lti_->derivative(xp, u, sig.tau_d);
      sig.tau_dis = lti_->lumped_disturbance(xp, u, sig.tau_d);
      u_obs = u;
    } else if (const auto* servo = std::get_if<ServoPlantSpec>(&s_.plant)) {
      const auto& p = servo->params;
      double accel = 0.0;
      if (s_.controller.kind == ControllerKind::constant) {
        accel = s_.controller.value(0);
      } else if (s_.controller.kind == ControllerKind::abc) {
        const Vector r = reference(t);
        accel = control::abc_desired_accel({r(0), r(1), r(2)}, sig.measured(0), sig.measured(1), *abc_);
      }
      const double current = (p.j_mn * accel + sig.tau_hat(0)) / p.k_taun;
      sig.u = Vector::Constant(1, current);
      sig.plant_dot = plants::servo_dynamics(p, xp, current, sig.tau_d(0));
      sig.tau_dis = Vector::Constant(1, plants::servo_lumped_disturbance(p, current, sig.tau_d(0)));
      u_obs = current;
    } else if (const auto* arm = std::get_if<TwoLinkPlantSpec>(&s_.plant)) {
      const Vector qm = sig.measured.head(2);
      const Vector qdm = sig.measured.tail(2);
      Vector accel = Vector::Zero(2);
      if (s_.controller.kind == ControllerKind::constant) {
        accel = s_.controller.value;
      } else if (s_.controller.kind == ControllerKind::abc) {
        const Vector r = reference(t);
        accel = control::abc_desired_accel(r.segment(0, 2), r.segment(2, 2), r.segment(4, 2), qm, qdm, *abc_);
      }
      const auto& nom = arm->arm.nominal;
      sig.u = plants::mass_matrix(nom, qm) * accel + plants::coriolis_matrix(nom, qm, qdm) * qdm +
              plants::gravity_vector(nom, qm) + sig.tau_hat;
      const Vector q = xp.head(2);
      const Vector qd = xp.tail(2);
      const Vector qdd = plants::manipulator_dynamics(arm->arm, q, qd, sig.u, sig.tau_d);
      sig.plant_dot.resize(4);
      sig.plant_dot << qd, qdd;
      sig.tau_dis = plants::manipulator_lumped_disturbance(nom, q, qd, qdd, sig.u);
    } else {
      const double u = s_.controller.kind == ControllerKind::constant ? s_.controller.value(0) : 0.0;
      sig.u = Vector::Constant(1, u);
      sig.plant_dot = nonlinear_->derivative(xp, u, sig.tau_d);
      sig.tau_dis = nonlinear_->lumped_disturbance(xp, u, sig.tau_d);
      u_obs = u;
    }

    // observer auxiliaries
    switch (s_.observer.kind) {
      case ObserverKind::none:
        sig.aux_dot = Vector(0);
        break;
      case ObserverKind::dob1:
        sig.aux_dot = observers::dob1_zdot(aux, xo, u_obs, nominal_, s_.observer.gain);
        break;
      case ObserverKind::hdob: {
        const auto zd = observers::hdob_zdots(*hdob, xo, u_obs, nominal_);
        sig.aux_dot.resize(aux_dim_);
        for (std::size_t j = 0; j < zd.size(); ++j) {
          sig.aux_dot.segment(static_cast<Eigen::Index>(j) * obs_dim_, obs_dim_) = zd[j];
        }
        break;
      }
      case ObserverKind::ndob:
        sig.aux_dot = observers::ndob_zdot(aux, xo, u_obs, *nonlinear_, gain_);
        break;
      case ObserverKind::manip_dob: {
        const auto& nom = std::get<TwoLinkPlantSpec>(s_.plant).arm.nominal;
        sig.aux_dot =
            observers::manip_dob_zdot(aux, sig.measured.head(2), xo, sig.u, nom, s_.observer.gain);
        break;
      }
    }
    return sig;
  }

  Vector derivative(double t, const Vector& state, const Vector& noise) const {
    const Signals sig = evaluate(t, state, noise);
    Vector d(state.size());
    d.head(plant_dim_) = sig.plant_dot;
    d.segment(plant_dim_, aux_dim_) = sig.aux_dot;
    d.tail(exo_dim_) = s_.disturbance.a_tau * state.tail(exo_dim_);
    return d;
  }

 private:
  void setup(const LtiPlantSpec& p) {
    plant_dim_ = obs_dim_ = dist_dim_ = p.a.rows();
    noise_dim_ = 1;
    noise_index_ = s_.sim.noise_index >= 0 ? s_.sim.noise_index : static_cast<int>(plant_dim_ - 1);
    x0_ = p.x0;
    lti_.emplace(p.a, p.a_n, p.b, p.b_n);
    nominal_ = lti_->nominal();
    if (s_.observer.kind == ObserverKind::ndob) {
      nonlinear_ = plants::from_lti(*lti_);
    }
    for (Eigen::Index i = 0; i < plant_dim_; ++i) {
      names_.push_back("x_" + std::to_string(i + 1));
    }
  }

  void setup(const ServoPlantSpec& p) {
    plant_dim_ = 3;
    obs_dim_ = dist_dim_ = noise_dim_ = 1;
    x0_ = Vector(3);
    x0_ << p.q0, p.qd0, p.qd0;
    // the observer works on the momentum J_mn * v with u = current
    nominal_ = {Matrix::Zero(1, 1), Vector::Constant(1, p.params.k_taun)};
    names_ = {"q", "qd", "v_f"};
  }

  void setup(const TwoLinkPlantSpec& p) {
    plant_dim_ = 4;
    obs_dim_ = dist_dim_ = noise_dim_ = 2;
    x0_ = Vector(4);
    x0_ << p.q0, p.qd0;
    names_ = {"q_1", "q_2", "qd_1", "qd_2"};
  }

  void setup(const PendulumPlantSpec& p) {
    plant_dim_ = obs_dim_ = dist_dim_ = 2;
    noise_dim_ = 1;
    x0_ = p.x0;
    nonlinear_ = plants::pendulum(p.actual, p.nominal);
    names_ = {"theta", "theta_dot"};
  }

  // Measured signals: the full state except that velocity carries noise. The
  // servo reports [q, filtered velocity], the arm [q, qdot].
  Vector measure(const Vector& xp, const Vector& noise) const {
    if (std::holds_alternative<ServoPlantSpec>(s_.plant)) {
      Vector m(2);
      m << xp(0), xp(2) + noise(0);
      return m;
    }
    Vector m = xp;
    if (std::holds_alternative<LtiPlantSpec>(s_.plant)) {
      m(noise_index_) += noise(0);
    } else if (std::holds_alternative<TwoLinkPlantSpec>(s_.plant)) {
      m.tail(2) += noise;
    } else {
      m(1) += noise(0);
    }
    return m;
  }

  Vector observer_coordinates(const Vector& measured) const {
    if (const auto* servo = std::get_if<ServoPlantSpec>(&s_.plant)) {
      return Vector::Constant(1, servo->params.j_mn * measured(1));
    }
    if (std::holds_alternative<TwoLinkPlantSpec>(s_.plant)) {
      return measured.tail(2);
    }
    return measured;
  }

  // [q_ref, qd_ref, qdd_ref], each of the input dimension
  Vector reference(double t) const {
    const auto& r = s_.controller.reference;
    const auto m = r.value.size();
    Vector out = Vector::Zero(3 * m);
    if (r.kind == ReferenceSpec::Kind::step) {
      if (t >= r.start) {
        out.head(m) = r.value;
      }
    } else {
      const double arg = r.omega * t + r.phase;
      out.head(m) = r.value * std::sin(arg);
      out.segment(m, m) = r.value * (r.omega * std::cos(arg));
      out.tail(m) = r.value * (-r.omega * r.omega * std::sin(arg));
    }
    return out;
  }

  const Scenario& s_;
  Eigen::Index plant_dim_ = 0, aux_dim_ = 0, exo_dim_ = 0, obs_dim_ = 0, dist_dim_ = 0, noise_dim_ = 0;
  int noise_index_ = 0;
  Vector x0_;
  std::vector<std::string> names_;
  std::optional<plants::LtiPlant> lti_;
  std::optional<plants::NonlinearPlant> nonlinear_;
  plants::NominalLinearModel nominal_;
  observers::NonlinearGain gain_;
  std::optional<control::AbcGains> abc_;
};

bool signals_finite(const Signals& s) {
  return s.u.allFinite() && s.tau_dis.allFinite() && s.tau_hat.allFinite() && s.measured.allFinite() &&
         s.plant_dot.allFinite();
}

}  // namespace

Trajectory run(const Scenario& scenario) {
  const Model model(scenario);
  Trajectory traj;
  traj.state_names = model.state_names();

  std::optional<control::LyapunovCertificate> cert;
  const auto* lti = std::get_if<LtiPlantSpec>(&scenario.plant);
  const bool sfb = scenario.controller.kind == ControllerKind::sfb;
  if (sfb && scenario.analysis.lyapunov_q) {
    cert = control::make_certificate(lti->a_n, lti->b_n, scenario.controller.k, *scenario.analysis.lyapunov_q,
                                     scenario.analysis.ell);
    traj.has_v = true;
  }

  const double h = scenario.sim.step;
  const auto steps = static_cast<long long>(std::floor(scenario.sim.duration / h + 1e-9));
  std::mt19937_64 rng(scenario.sim.seed);
  Vector noise = Vector::Zero(model.noise_dim());
  Vector x = model.initial_state();

  for (long long k = 0;; ++k) {
    const double t = static_cast<double>(k) * h;
    if (scenario.sim.noise > 0.0) {
      for (Eigen::Index i = 0; i < noise.size(); ++i) {
        noise(i) = scenario.sim.noise * uniform_pm1(rng);
      }
    }
    try {
      if (k % scenario.sim.log_every == 0) {
        const Signals sig = model.evaluate(t, x, noise);
        if (!signals_finite(sig)) {
          throw DivergenceError("non-finite signal", t);
        }
        const Vector xp = x.head(model.plant_dim());
        traj.t.push_back(t);
        traj.state.push_back(xp);
        traj.state_dot.push_back(sig.plant_dot);
        traj.measured.push_back(sig.measured);
        traj.u.push_back(sig.u);
        traj.tau_d.push_back(sig.tau_d);
        traj.tau_dis.push_back(sig.tau_dis);
        traj.tau_hat.push_back(sig.tau_hat);
        traj.higher_estimates.push_back(sig.higher);
        traj.err.push_back(sig.tau_hat - sig.tau_dis);
        traj.err_norm.push_back(traj.err.back().norm());
        if (sfb) {
          traj.matched_err.push_back(plants::matched_component(traj.err.back(), lti->b_n));
        }
        if (cert) {
          traj.v.push_back(xp.dot(cert->p * xp));
        }
      }
      if (k >= steps) {
        break;
      }
      x = numerics::rk4_step([&](double tt, const Vector& xx) { return model.derivative(tt, xx, noise); }, x, t, h);
    } catch (const DivergenceError& e) {
      traj.divergence = Divergence{traj.t.empty() ? 0 : traj.t.size() - 1, e.time(), e.what()};
      break;
    }
  }
  return traj;
}

}  // namespace dob::sim
