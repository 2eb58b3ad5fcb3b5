#include "dob/sim/config.hpp"

#include "dob/error.hpp"
#include "dob/plants/lti_plant.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace dob::sim {

using nlohmann::json;

namespace {

// Read-only view of a JSON object that knows its dotted path, so every
// diagnostic can name the offending field.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  [[noreturn]] void fail(std::string_view key, const std::string& msg) const { throw ConfigError(field(key), msg); }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : j_.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        std::string list;
        for (auto allowed : keys) {
          list += list.empty() ? "" : ", ";
          list += allowed;
        }
        fail(k, "unknown key (allowed: " + list + ")");
      }
    }
  }

  bool has(std::string_view key) const { return j_.contains(key); }

  const json& raw(std::string_view key) const {
    if (!has(key)) {
      fail(key, "missing required key");
    }
    return j_.at(key);
  }

  Node child(std::string_view key) const { return {raw(key), field(key)}; }

  std::string string(std::string_view key) const {
    const auto& v = raw(key);
    if (!v.is_string()) {
      fail(key, "expected a string");
    }
    return v.get<std::string>();
  }

  double number(std::string_view key) const { return to_number(raw(key), field(key)); }
  double number_or(std::string_view key, double fallback) const { return has(key) ? number(key) : fallback; }

  double positive(std::string_view key) const {
    const double v = number(key);
    if (!(v > 0.0)) {
      fail(key, "must be positive");
    }
    return v;
  }
  double positive_or(std::string_view key, double fallback) const { return has(key) ? positive(key) : fallback; }

  double non_negative_or(std::string_view key, double fallback) const {
    if (!has(key)) {
      return fallback;
    }
    const double v = number(key);
    if (!(v >= 0.0)) {
      fail(key, "must be non-negative");
    }
    return v;
  }

  long long integer(std::string_view key) const {
    const auto& v = raw(key);
    const double d = to_number(v, field(key));
    if (std::floor(d) != d || std::abs(d) > 9.0e15) {
      fail(key, "expected an integer");
    }
    return static_cast<long long>(d);
  }

  /// Array of numbers; a bare number is accepted when `allow_scalar`.
  Vector vector(std::string_view key, bool allow_scalar = false) const {
    const auto& v = raw(key);
    if (allow_scalar && v.is_number()) {
      return Vector::Constant(1, to_number(v, field(key)));
    }
    if (!v.is_array() || v.empty()) {
      fail(key, "expected a non-empty array of numbers");
    }
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      out(static_cast<Eigen::Index>(i)) = to_number(v[i], field(key) + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  Vector vector_of_size(std::string_view key, Eigen::Index n, bool allow_scalar = false) const {
    Vector v = vector(key, allow_scalar);
    if (allow_scalar && v.size() == 1 && n > 1 && raw(key).is_number()) {
      return Vector::Constant(n, v(0));
    }
    if (v.size() != n) {
      fail(key, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    }
    return v;
  }

  Matrix matrix(std::string_view key) const {
    const auto& v = raw(key);
    if (!v.is_array() || v.empty()) {
      fail(key, "expected a non-empty array of rows");
    }
    const std::size_t rows = v.size();
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (!v[i].is_array() || v[i].empty()) {
        fail(key, "row " + std::to_string(i) + " is not a non-empty array");
      }
      if (i == 0) {
        cols = v[i].size();
      } else if (v[i].size() != cols) {
        fail(key, "rows have different lengths");
      }
    }
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t c = 0; c < cols; ++c) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
            to_number(v[i][c], field(key) + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
      }
    }
    return m;
  }

  const json& json_value() const { return j_; }
  const std::string& path() const { return path_; }

 private:
  static double to_number(const json& v, const std::string& where) {
    if (!v.is_number()) {
      throw ConfigError(where, "expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      throw ConfigError(where, "must be finite");
    }
    return d;
  }

  const json& j_;
  std::string path_;
};

LtiPlantSpec parse_lti(const Node& n) {
  n.allow_only({"type", "a", "a_n", "b", "b_n", "x0"});
  LtiPlantSpec s;
  s.a = n.matrix("a");
  const auto dim = s.a.rows();
  if (s.a.cols() != dim) {
    n.fail("a", "must be square");
  }
  s.a_n = n.has("a_n") ? n.matrix("a_n") : s.a;
  if (s.a_n.rows() != dim || s.a_n.cols() != dim) {
    n.fail("a_n", "must have the same shape as a");
  }
  s.b = n.vector_of_size("b", dim);
  s.b_n = n.has("b_n") ? n.vector_of_size("b_n", dim) : s.b;
  if (s.b_n.norm() == 0.0) {
    n.fail(n.has("b_n") ? "b_n" : "b", "input channel must be non-zero");
  }
  s.x0 = n.has("x0") ? n.vector_of_size("x0", dim) : Vector::Zero(dim);
  return s;
}

ServoPlantSpec parse_servo(const Node& n) {
  n.allow_only({"type", "j_m", "j_mn", "k_tau", "k_taun", "g_v", "q0", "qd0"});
  const double j_m = n.positive("j_m");
  const double j_mn = n.positive_or("j_mn", j_m);
  const double k_tau = n.positive("k_tau");
  const double k_taun = n.positive_or("k_taun", k_tau);
  const double g_v = n.positive("g_v");
  ServoPlantSpec s{plants::ServoPlant(j_m, j_mn, k_tau, k_taun, g_v)};
  s.q0 = n.number_or("q0", 0.0);
  s.qd0 = n.number_or("qd0", 0.0);
  return s;
}

plants::ArmParameters parse_arm(const Node& n, const plants::ArmParameters& base) {
  n.allow_only({"m1", "m2", "l1", "l2", "lc1", "lc2", "i1", "i2", "gravity"});
  plants::ArmParameters p = base;
  p.m1 = n.positive_or("m1", p.m1);
  p.m2 = n.positive_or("m2", p.m2);
  p.l1 = n.positive_or("l1", p.l1);
  p.l2 = n.positive_or("l2", p.l2);
  p.i1 = n.positive_or("i1", p.i1);
  p.i2 = n.positive_or("i2", p.i2);
  p.lc1 = n.non_negative_or("lc1", p.lc1);
  p.lc2 = n.non_negative_or("lc2", p.lc2);
  p.gravity = n.non_negative_or("gravity", p.gravity);
  return p;
}

TwoLinkPlantSpec parse_two_link(const Node& n) {
  n.allow_only({"type", "actual", "nominal", "q0", "qd0"});
  TwoLinkPlantSpec s;
  s.arm.actual = n.has("actual") ? parse_arm(n.child("actual"), {}) : plants::ArmParameters{};
  s.arm.nominal = n.has("nominal") ? parse_arm(n.child("nominal"), s.arm.actual) : s.arm.actual;
  s.q0 = n.has("q0") ? n.vector_of_size("q0", 2) : Vector::Zero(2);
  s.qd0 = n.has("qd0") ? n.vector_of_size("qd0", 2) : Vector::Zero(2);
  return s;
}

plants::PendulumParameters parse_pendulum_params(const Node& n, const plants::PendulumParameters& base) {
  n.allow_only({"omega0_sq", "damping", "input_gain"});
  plants::PendulumParameters p = base;
  p.omega0_sq = n.number_or("omega0_sq", p.omega0_sq);
  p.damping = n.non_negative_or("damping", p.damping);
  p.input_gain = n.number_or("input_gain", p.input_gain);
  if (p.input_gain == 0.0) {
    n.fail("input_gain", "must be non-zero");
  }
  return p;
}

PendulumPlantSpec parse_pendulum(const Node& n) {
  n.allow_only({"type", "actual", "nominal", "x0"});
  PendulumPlantSpec s;
  s.actual = n.has("actual") ? parse_pendulum_params(n.child("actual"), {}) : plants::PendulumParameters{};
  s.nominal = n.has("nominal") ? parse_pendulum_params(n.child("nominal"), {}) : plants::PendulumParameters{};
  s.x0 = n.has("x0") ? n.vector_of_size("x0", 2) : Vector::Zero(2);
  return s;
}

PlantSpec parse_plant(const Node& n) {
  const std::string type = n.string("type");
  if (type == "lti") {
    return parse_lti(n);
  }
  if (type == "servo") {
    return parse_servo(n);
  }
  if (type == "two_link") {
    return parse_two_link(n);
  }
  if (type == "pendulum") {
    return parse_pendulum(n);
  }
  n.fail("type", "unknown plant type '" + type + "' (lti, servo, two_link, pendulum)");
}

Eigen::Index state_dim(const PlantSpec& plant) {
  struct {
    Eigen::Index operator()(const LtiPlantSpec& s) const { return s.a.rows(); }
    Eigen::Index operator()(const ServoPlantSpec&) const { return 3; }
    Eigen::Index operator()(const TwoLinkPlantSpec&) const { return 4; }
    Eigen::Index operator()(const PendulumPlantSpec&) const { return 2; }
  } v;
  return std::visit(v, plant);
}

ObserverSpec parse_observer(const Node& n, const PlantSpec& plant) {
  ObserverSpec s;
  const std::string type = n.string("type");
  const bool lti = std::holds_alternative<LtiPlantSpec>(plant);
  const bool servo = std::holds_alternative<ServoPlantSpec>(plant);
  const bool pendulum = std::holds_alternative<PendulumPlantSpec>(plant);
  const bool two_link = std::holds_alternative<TwoLinkPlantSpec>(plant);
  if (type == "none") {
    n.allow_only({"type"});
    s.kind = ObserverKind::none;
  } else if (type == "dob1") {
    n.allow_only({"type", "gain"});
    if (!lti && !servo) {
      n.fail("type", "dob1 needs an lti or servo plant");
    }
    s.kind = ObserverKind::dob1;
    s.gain = n.positive("gain");
  } else if (type == "hdob") {
    n.allow_only({"type", "order", "gain", "gains"});
    if (!lti && !servo) {
      n.fail("type", "hdob needs an lti or servo plant");
    }
    s.kind = ObserverKind::hdob;
    if (n.has("gains")) {
      if (n.has("order") || n.has("gain")) {
        n.fail("gains", "give either explicit gains or order and gain, not both");
      }
      const Vector g = n.vector("gains");
      s.gains.assign(g.data(), g.data() + g.size());
      // error dynamics s^k + L_1 s^(k-1) + ... + L_k must be Hurwitz
      const auto k = g.size();
      Matrix companion = Matrix::Zero(k, k);
      for (Eigen::Index j = 0; j < k; ++j) {
        companion(0, j) = -g(j);
        if (j + 1 < k) {
          companion(j + 1, j) = 1.0;
        }
      }
      if (!numerics::is_hurwitz(companion)) {
        n.fail("gains", "estimation error dynamics are not stable");
      }
    } else {
      const long long order = n.integer("order");
      if (order < 1 || order > 8) {
        n.fail("order", "must be between 1 and 8");
      }
      s.gain = n.positive("gain");
      s.gains.resize(static_cast<std::size_t>(order));
      double binom = 1.0;
      for (long long j = 1; j <= order; ++j) {
        binom = binom * static_cast<double>(order - j + 1) / static_cast<double>(j);
        s.gains[static_cast<std::size_t>(j - 1)] = binom * std::pow(s.gain, static_cast<double>(j));
      }
    }
  } else if (type == "ndob") {
    n.allow_only({"type", "lambda", "kappa"});
    if (!lti && !pendulum) {
      n.fail("type", "ndob needs a pendulum or lti plant");
    }
    s.kind = ObserverKind::ndob;
    const auto dim = state_dim(plant);
    s.lambda = n.vector_of_size("lambda", dim, true);
    if (!(s.lambda.minCoeff() > 0.0)) {
      n.fail("lambda", "entries must be positive");
    }
    s.kappa = n.has("kappa") ? n.vector_of_size("kappa", dim, true) : Vector::Zero(dim);
    if (!(s.kappa.minCoeff() >= 0.0)) {
      n.fail("kappa", "entries must be non-negative");
    }
  } else if (type == "manip_dob") {
    n.allow_only({"type", "gain"});
    if (!two_link) {
      n.fail("type", "manip_dob needs a two_link plant");
    }
    s.kind = ObserverKind::manip_dob;
    s.gain = n.positive("gain");
  } else {
    n.fail("type", "unknown observer type '" + type + "' (none, dob1, hdob, ndob, manip_dob)");
  }
  if (two_link && s.kind != ObserverKind::none && s.kind != ObserverKind::manip_dob) {
    n.fail("type", "a two_link plant takes manip_dob or none");
  }
  return s;
}

Eigen::Index input_dim(const PlantSpec& plant) { return std::holds_alternative<TwoLinkPlantSpec>(plant) ? 2 : 1; }

ReferenceSpec parse_reference(const Node& n, Eigen::Index dof) {
  ReferenceSpec r;
  const std::string type = n.string("type");
  if (type == "step") {
    n.allow_only({"type", "value", "start"});
    r.kind = ReferenceSpec::Kind::step;
    r.value = n.vector_of_size("value", dof, true);
    r.start = n.non_negative_or("start", 0.0);
  } else if (type == "sinusoid") {
    n.allow_only({"type", "amplitude", "omega", "phase"});
    r.kind = ReferenceSpec::Kind::sinusoid;
    r.value = n.vector_of_size("amplitude", dof, true);
    r.omega = n.positive("omega");
    r.phase = n.number_or("phase", 0.0);
  } else {
    n.fail("type", "unknown reference type '" + type + "' (step, sinusoid)");
  }
  return r;
}

ControllerSpec parse_controller(const Node& n, const PlantSpec& plant) {
  ControllerSpec s;
  const std::string type = n.string("type");
  const auto m = input_dim(plant);
  if (type == "none") {
    n.allow_only({"type"});
  } else if (type == "constant") {
    n.allow_only({"type", "value"});
    s.kind = ControllerKind::constant;
    s.value = n.vector_of_size("value", m, true);
  } else if (type == "abc") {
    n.allow_only({"type", "kp", "kd", "reference"});
    if (!std::holds_alternative<ServoPlantSpec>(plant) && !std::holds_alternative<TwoLinkPlantSpec>(plant)) {
      n.fail("type", "abc needs a servo or two_link plant");
    }
    s.kind = ControllerKind::abc;
    s.kp = n.positive("kp");
    s.kd = n.positive("kd");
    if (n.has("reference")) {
      s.reference = parse_reference(n.child("reference"), m);
    } else {
      s.reference.value = Vector::Zero(m);
    }
  } else if (type == "sfb") {
    n.allow_only({"type", "k"});
    const auto* lti = std::get_if<LtiPlantSpec>(&plant);
    if (lti == nullptr) {
      n.fail("type", "sfb needs an lti plant");
    }
    s.kind = ControllerKind::sfb;
    s.k = n.vector_of_size("k", lti->a.rows());
    const plants::LtiPlant p(lti->a, lti->a_n, lti->b, lti->b_n);
    if (!p.uncertainty_is_matched()) {
      n.fail("type", "sfb needs plant uncertainty confined to the input channel b_n");
    }
    if (!numerics::is_hurwitz(lti->a_n - lti->b_n * s.k.transpose())) {
      n.fail("k", "nominal closed loop a_n - b_n k is not Hurwitz");
    }
  } else {
    n.fail("type", "unknown controller type '" + type + "' (none, constant, abc, sfb)");
  }
  return s;
}

Vector default_direction(const PlantSpec& plant) {
  if (const auto* lti = std::get_if<LtiPlantSpec>(&plant)) {
    return lti->b_n;
  }
  if (std::holds_alternative<ServoPlantSpec>(plant)) {
    return Vector::Ones(1);
  }
  if (std::holds_alternative<PendulumPlantSpec>(plant)) {
    Vector d(2);
    d << 0.0, 1.0;
    return d;
  }
  return Vector::Ones(2);
}

plants::DisturbanceModel parse_disturbance(const Node& n, const PlantSpec& plant) {
  const std::string type = n.string("type");
  const auto d = disturbance_dim(plant);
  auto direction = [&] { return n.has("direction") ? n.vector_of_size("direction", d, true) : default_direction(plant); };
  if (type == "none") {
    n.allow_only({"type"});
    return plants::DisturbanceModel::none(d);
  }
  if (type == "constant") {
    n.allow_only({"type", "value", "direction"});
    if (n.raw("value").is_array()) {
      if (n.has("direction")) {
        n.fail("direction", "not allowed with a vector value");
      }
      return plants::DisturbanceModel::constant(n.vector_of_size("value", d));
    }
    // one exosystem state along the direction, so the channel stays visible
    return plants::DisturbanceModel::polynomial({n.number("value")}, direction());
  }
  if (type == "polynomial") {
    n.allow_only({"type", "coeffs", "direction"});
    const Vector c = n.vector("coeffs");
    return plants::DisturbanceModel::polynomial(std::vector<double>(c.data(), c.data() + c.size()), direction());
  }
  if (type == "sinusoid") {
    n.allow_only({"type", "amplitude", "omega", "phase", "direction"});
    const double amplitude = n.number("amplitude");
    const double omega = n.positive("omega");
    return plants::DisturbanceModel::sinusoid(amplitude, omega, n.number_or("phase", 0.0), direction());
  }
  if (type == "exosystem") {
    n.allow_only({"type", "a_tau", "c_tau", "x0"});
    const Matrix a = n.matrix("a_tau");
    if (a.cols() != a.rows()) {
      n.fail("a_tau", "must be square");
    }
    const Matrix c = n.matrix("c_tau");
    if (c.rows() != d || c.cols() != a.rows()) {
      n.fail("c_tau", "must be " + std::to_string(d) + " x " + std::to_string(a.rows()));
    }
    return {a, c, n.vector_of_size("x0", a.rows())};
  }
  if (type == "sum") {
    n.allow_only({"type", "terms"});
    const auto& terms = n.raw("terms");
    if (!terms.is_array() || terms.empty()) {
      n.fail("terms", "expected a non-empty array of disturbance objects");
    }
    std::vector<plants::DisturbanceModel> parts;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      parts.push_back(parse_disturbance(Node(terms[i], n.field("terms") + "[" + std::to_string(i) + "]"), plant));
    }
    return plants::DisturbanceModel::sum(parts);
  }
  n.fail("type", "unknown disturbance type '" + type + "' (none, constant, polynomial, sinusoid, exosystem, sum)");
}

SimSettings parse_sim(const Node& n, const PlantSpec& plant) {
  n.allow_only({"duration", "step", "log_every", "noise", "seed", "noise_index"});
  SimSettings s;
  s.duration = n.positive("duration");
  s.step = n.positive_or("step", 1e-4);
  if (s.duration < s.step) {
    n.fail("duration", "must be at least one step");
  }
  if (n.has("log_every")) {
    const auto k = n.integer("log_every");
    if (k < 1 || k > std::numeric_limits<int>::max()) {
      n.fail("log_every", "must be a positive integer");
    }
    s.log_every = static_cast<int>(k);
  }
  s.noise = n.non_negative_or("noise", 0.0);
  if (n.has("seed")) {
    const auto seed = n.integer("seed");
    if (seed < 0) {
      n.fail("seed", "must be non-negative");
    }
    s.seed = static_cast<std::uint64_t>(seed);
  }
  if (n.has("noise_index")) {
    const auto* lti = std::get_if<LtiPlantSpec>(&plant);
    if (lti == nullptr) {
      n.fail("noise_index", "only lti plants take a noise index");
    }
    const auto idx = n.integer("noise_index");
    if (idx < 0 || idx >= lti->a.rows()) {
      n.fail("noise_index", "out of range for the state dimension");
    }
    s.noise_index = static_cast<int>(idx);
  }
  return s;
}

AnalysisSpec parse_analysis(const Node& n, const PlantSpec& plant) {
  n.allow_only({"lyapunov_q", "ell", "bode", "omega_min", "omega_max", "points", "alpha_grid"});
  AnalysisSpec s;
  if (n.has("lyapunov_q")) {
    const Matrix q = n.matrix("lyapunov_q");
    const auto dim = state_dim(plant);
    if (q.rows() != dim || q.cols() != dim) {
      n.fail("lyapunov_q", "must be " + std::to_string(dim) + " x " + std::to_string(dim));
    }
    if (!numerics::is_symmetric(q, 1e-12) || !numerics::is_positive_definite(q)) {
      n.fail("lyapunov_q", "must be symmetric positive definite");
    }
    s.lyapunov_q = q;
  }
  if (n.has("ell")) {
    s.ell = n.positive("ell");
  }
  if (n.has("bode")) {
    s.bode = n.string("bode");
    if (s.bode != "sensitivity" && s.bode != "complementary" && s.bode != "loop" && s.bode != "closed_loop") {
      n.fail("bode", "unknown transfer '" + s.bode + "' (sensitivity, complementary, loop, closed_loop)");
    }
  }
  s.omega_min = n.positive_or("omega_min", s.omega_min);
  s.omega_max = n.positive_or("omega_max", s.omega_max);
  if (!(s.omega_max > s.omega_min)) {
    n.fail("omega_max", "must exceed omega_min");
  }
  if (n.has("points")) {
    const auto p = n.integer("points");
    if (p < 2 || p > 1000000) {
      n.fail("points", "must be between 2 and 1000000");
    }
    s.points = static_cast<int>(p);
  }
  if (n.has("alpha_grid")) {
    const Vector a = n.vector("alpha_grid");
    if (!(a.minCoeff() > 0.0)) {
      n.fail("alpha_grid", "entries must be positive");
    }
    s.alpha_grid.assign(a.data(), a.data() + a.size());
  }
  return s;
}

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Eigen::Index disturbance_dim(const PlantSpec& plant) {
  struct {
    Eigen::Index operator()(const LtiPlantSpec& s) const { return s.a.rows(); }
    Eigen::Index operator()(const ServoPlantSpec&) const { return 1; }
    Eigen::Index operator()(const TwoLinkPlantSpec&) const { return 2; }
    Eigen::Index operator()(const PendulumPlantSpec&) const { return 2; }
  } v;
  return std::visit(v, plant);
}

Scenario parse_scenario(const json& doc) {
  const Node root(doc, "");
  root.allow_only({"plant", "observer", "controller", "disturbance", "sim", "analysis"});
  PlantSpec plant = parse_plant(root.child("plant"));
  Scenario s{std::move(plant), {}, {}, {}, {}, {}};
  if (root.has("observer")) {
    s.observer = parse_observer(root.child("observer"), s.plant);
  }
  if (root.has("controller")) {
    s.controller = parse_controller(root.child("controller"), s.plant);
  }
  s.disturbance = root.has("disturbance") ? parse_disturbance(root.child("disturbance"), s.plant)
                                          : plants::DisturbanceModel::none(disturbance_dim(s.plant));
  if (s.controller.kind == ControllerKind::sfb) {
    const auto& lti = std::get<LtiPlantSpec>(s.plant);
    for (Eigen::Index j = 0; j < s.disturbance.c_tau.cols(); ++j) {
      if (!plants::in_input_channel(s.disturbance.c_tau.col(j), lti.b_n, 1e-9)) {
        throw ConfigError("disturbance", "sfb cancellation needs a disturbance acting along b_n");
      }
    }
  }
  s.sim = parse_sim(root.child("sim"), s.plant);
  if (root.has("analysis")) {
    s.analysis = parse_analysis(root.child("analysis"), s.plant);
    if (s.analysis.ell && s.analysis.lyapunov_q) {
      const double lim = numerics::min_symmetric_eigenvalue(*s.analysis.lyapunov_q) - 1.0;
      if (!(*s.analysis.ell < lim)) {
        throw ConfigError("analysis.ell", "must be below min eig(lyapunov_q) - 1");
      }
    }
  }
  return s;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << e.what();
    throw ConfigError("<document>", os.str());
  }
}

json read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("<document>", "cannot open '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return parse_document(os.str());
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_document(path)); }

void set_parameter(json& doc, const std::string& dotted_path, double value) {
  if (dotted_path.empty()) {
    throw ConfigError("<param>", "empty parameter path");
  }
  json* node = &doc;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = dotted_path.find('.', pos);
    const std::string key = dotted_path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    const bool last = dot == std::string::npos;
    const std::string so_far = dotted_path.substr(0, last ? std::string::npos : dot);
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(key, &used);
        if (used != key.size()) {
          throw std::invalid_argument(key);
        }
      } catch (const std::exception&) {
        throw ConfigError(so_far, "expected an array index");
      }
      if (idx >= node->size()) {
        throw ConfigError(so_far, "array index out of range");
      }
      node = &(*node)[idx];
    } else if (node->is_object()) {
      if (!last && !node->contains(key)) {
        throw ConfigError(so_far, "no such key in the document");
      }
      node = &(*node)[key];
    } else {
      throw ConfigError(so_far, "cannot descend into a scalar");
    }
    if (last) {
      break;
    }
    pos = dot + 1;
  }
  if (!node->is_null() && !node->is_number()) {
    throw ConfigError(dotted_path, "swept parameter must be numeric");
  }
  *node = value;
}

}  // namespace dob::sim
