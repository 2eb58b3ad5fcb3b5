#pragma once

#include "dob/numerics/linalg.hpp"
#include "dob/plants/disturbance.hpp"
#include "dob/plants/nonlinear.hpp"
#include "dob/plants/servo.hpp"
#include "dob/plants/two_link_arm.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dob::sim {

using numerics::Matrix;
using numerics::Vector;

struct LtiPlantSpec {
  Matrix a, a_n;
  Vector b, b_n;
  Vector x0;
};

struct ServoPlantSpec {
  plants::ServoPlant params;
  double q0 = 0.0;
  double qd0 = 0.0;  // the velocity filter starts at qd0 as well
};

struct TwoLinkPlantSpec {
  plants::TwoLinkArm arm;
  Vector q0, qd0;
};

struct PendulumPlantSpec {
  plants::PendulumParameters actual, nominal;
  Vector x0;
};

using PlantSpec = std::variant<LtiPlantSpec, ServoPlantSpec, TwoLinkPlantSpec, PendulumPlantSpec>;

enum class ObserverKind { none, dob1, hdob, ndob, manip_dob };

struct ObserverSpec {
  ObserverKind kind = ObserverKind::none;
  double gain = 0.0;          // dob1, manip_dob; bandwidth for hdob when given
  std::vector<double> gains;  // hdob L_1..L_k
  Vector lambda, kappa;       // ndob
};

enum class ControllerKind { none, constant, abc, sfb };

struct ReferenceSpec {
  enum class Kind { step, sinusoid } kind = Kind::step;
  Vector value;      // step height, or sinusoid amplitude
  double omega = 0.0;
  double phase = 0.0;
  double start = 0.0;  // step time
};

/// For servo and two_link plants the controller output is a desired
/// acceleration realized through the DOb-compensated inner loop; for lti and
/// pendulum plants it is the plant input itself.
struct ControllerSpec {
  ControllerKind kind = ControllerKind::none;
  Vector value;  // constant
  double kp = 0.0, kd = 0.0;
  ReferenceSpec reference;
  Vector k;      // sfb
};

struct SimSettings {
  double duration = 0.0;
  double step = 1e-4;
  int log_every = 1;
  double noise = 0.0;         // uniform amplitude on measured velocity
  std::uint64_t seed = 0;
  int noise_index = -1;       // lti only; defaults to the last state
};

struct AnalysisSpec {
  std::optional<Matrix> lyapunov_q;
  std::optional<double> ell;
  std::string bode = "sensitivity";  // sensitivity | complementary | loop | closed_loop
  double omega_min = 1e-2;
  double omega_max = 1e6;
  int points = 801;
  std::vector<double> alpha_grid;
};

struct Scenario {
  PlantSpec plant;
  ObserverSpec observer;
  ControllerSpec controller;
  plants::DisturbanceModel disturbance;
  SimSettings sim;
  AnalysisSpec analysis;
};

/// Validates a scenario document. Every problem raises ConfigError whose
/// field() is the dotted path of the offending key.
Scenario parse_scenario(const nlohmann::json& doc);

/// Parses JSON text; syntax errors report line and column.
nlohmann::json parse_document(const std::string& text);
nlohmann::json read_document(const std::string& path);
Scenario load_scenario(const std::string& path);

/// Sets a numeric leaf addressed by a dotted path ("observer.gain",
/// "controller.k.0"). Intermediate objects and arrays must exist.
void set_parameter(nlohmann::json& doc, const std::string& dotted_path, double value);

/// Dimension of the disturbance signal the plant accepts.
Eigen::Index disturbance_dim(const PlantSpec& plant);

}  // namespace dob::sim
