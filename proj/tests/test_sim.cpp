#include "dob/error.hpp"
#include "dob/freqdomain/filters.hpp"
#include "dob/sim/commands.hpp"
#include "dob/sim/config.hpp"
#include "dob/sim/runner.hpp"
#include "dob/sim/trajectory_csv.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace dob;
using namespace dob::sim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = DOB_SOURCE_DIR;

json config(const std::string& name) { return read_document((kSource / "configs" / name).string()); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::current_path() / "sim_scratch";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double decay_rate(const std::vector<double>& t, const std::vector<double>& e) {
  double st = 0, se = 0, stt = 0, ste = 0;
  const double n = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double le = std::log(e[i]);
    st += t[i];
    se += le;
    stt += t[i] * t[i];
    ste += t[i] * le;
  }
  return -(n * ste - st * se) / (n * stt - st * st);
}

double overshoot(const Trajectory& traj, double target) {
  double peak = -1e300;
  for (const auto& x : traj.state) {
    peak = std::max(peak, x(0));
  }
  return (peak - target) / target;
}

}  // namespace

TEST_CASE("malformed configurations are rejected with the offending field") {
  const fs::path dir = kSource / "tests" / "data" / "malformed";
  const json expected = read_document((dir / "expected.json").string());
  int rejected = 0;
  for (const auto& [file, want] : expected.items()) {
    const std::string field = want.at("field");
    try {
      load_scenario((dir / file).string());
      FAIL_CHECK(file << " was accepted");
    } catch (const ConfigError& e) {
      CHECK_MESSAGE(e.field() == field, file << ": " << e.what());
      CHECK_MESSAGE(std::string(e.what()).find(field) != std::string::npos, file);
      if (want.contains("contains")) {
        CHECK_MESSAGE(std::string(e.what()).find(want.at("contains").get<std::string>()) != std::string::npos, e.what());
      }
      ++rejected;
    }
  }
  CHECK(rejected == 15);
}

TEST_CASE("shipped configurations load and run without divergence") {
  for (const auto& entry : fs::directory_iterator(kSource / "configs")) {
    const auto traj = run(load_scenario(entry.path().string()));
    CHECK_MESSAGE(!traj.divergence, entry.path().filename().string());
    CHECK(traj.size() > 2);
  }
}

TEST_CASE("logged samples are finite and the error column is tau_hat - tau_dis") {
  for (const auto& entry : fs::directory_iterator(kSource / "configs")) {
    const auto traj = run(load_scenario(entry.path().string()));
    for (std::size_t i = 0; i < traj.size(); ++i) {
      CHECK(traj.state[i].allFinite());
      CHECK(traj.u[i].allFinite());
      CHECK((traj.err[i] - (traj.tau_hat[i] - traj.tau_dis[i])).cwiseAbs().maxCoeff() == 0.0);
      CHECK(traj.err_norm[i] == doctest::Approx(traj.err[i].norm()).epsilon(1e-15));
    }
  }
}

TEST_CASE("uniform grid and logging decimation") {
  json doc = config("abc_servo.json");
  const auto traj = run(parse_scenario(doc));
  REQUIRE(traj.size() == 2001);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(traj.t[i] == doctest::Approx(i * 1e-3).epsilon(1e-12));
  }
}

TEST_CASE("servo at rest with no input stays at rest") {
  const json doc = {{"plant", {{"type", "servo"}, {"j_m", 0.01}, {"k_tau", 0.2}, {"g_v", 1000.0}}},
                    {"sim", {{"duration", 0.5}}}};
  const auto traj = run(parse_scenario(doc));
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(traj.state[i].isZero(0.0));
    CHECK(traj.u[i].isZero(0.0));
    CHECK(traj.tau_hat[i].isZero(0.0));
  }
}

TEST_CASE("servo DOb: constant disturbance estimated at the effective bandwidth") {
  json doc = config("servo_dob1_constant.json");
  set_parameter(doc, "observer.gain", 50.0);
  set_parameter(doc, "sim.duration", 0.4);
  const auto traj = run(parse_scenario(doc));
  // slowest pole of s^2 + g_v s + g_v g
  const double g_v = 1000.0;
  const double slow = 0.5 * (g_v - std::sqrt(g_v * g_v - 4.0 * g_v * 50.0));
  std::vector<double> t, e;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.t[i] > 0.02 && traj.t[i] < 0.2) {
      t.push_back(traj.t[i]);
      e.push_back(traj.err_norm[i]);
    }
  }
  CHECK(decay_rate(t, e) == doctest::Approx(slow).epsilon(0.02));
  CHECK(traj.err_norm.back() < 1e-6);
  CHECK(traj.tau_hat.back()(0) == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("acceleration-based position loop: overshoot drops as alpha grows") {
  json doc = config("abc_servo.json");
  set_parameter(doc, "plant.j_mn", 0.02);  // alpha = 2
  const auto high = run(parse_scenario(doc));
  set_parameter(doc, "plant.j_mn", 0.005);  // alpha = 0.5
  const auto low = run(parse_scenario(doc));
  REQUIRE_FALSE(high.divergence);
  REQUIRE_FALSE(low.divergence);
  CHECK(overshoot(high, 1.0) < overshoot(low, 1.0));
  CHECK(high.state.back()(0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("reruns are byte-identical and the seed matters") {
  json doc = config("abc_servo.json");
  set_parameter(doc, "sim.noise", 1e-3);
  set_parameter(doc, "sim.duration", 0.3);
  const fs::path cfg = scratch("noisy.json");
  std::ofstream(cfg) << doc.dump(2);
  auto simulate = [&](const std::string& out, std::optional<std::uint64_t> seed) {
    cmd_simulate({cfg.string(), scratch(out).string(), true, seed});
    return slurp(scratch(out));
  };
  const std::string a = simulate("a.csv", 7);
  const std::string b = simulate("b.csv", 7);
  const std::string c = simulate("c.csv", 8);
  CHECK(a.size() > 1000);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("halving the step leaves logged states unchanged to 1e-6") {
  for (const auto& entry : fs::directory_iterator(kSource / "configs")) {
    json doc = read_document(entry.path().string());
    const auto coarse_s = parse_scenario(doc);
    set_parameter(doc, "sim.step", 0.5 * coarse_s.sim.step);
    set_parameter(doc, "sim.log_every", 2.0 * coarse_s.sim.log_every);
    const auto coarse = run(coarse_s);
    const auto fine = run(parse_scenario(doc));
    REQUIRE(coarse.size() == fine.size());
    const auto dim = coarse.state.front().size();
    for (Eigen::Index j = 0; j < dim; ++j) {
      double scale = 0.0, diff = 0.0;
      for (std::size_t i = 0; i < coarse.size(); ++i) {
        scale = std::max(scale, std::abs(fine.state[i](j)));
        diff = std::max(diff, std::abs(fine.state[i](j) - coarse.state[i](j)));
      }
      CHECK_MESSAGE(diff <= 1e-6 * std::max(scale, 1e-300),
                    entry.path().filename().string() << " state " << j << ": " << diff << " / " << scale);
    }
  }
}

TEST_CASE("sweep over the observer gain follows the sinusoid ratio") {
  const json doc = config("lti_sfb_sinusoid.json");
  const std::vector<double> gains{50.0, 100.0, 200.0};
  const auto rows = run_sweep(doc, "observer.gain", gains, 3);
  REQUIRE(rows.size() == 3);
  const double w = 20.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].value == gains[i]);
    CHECK_FALSE(rows[i].phase_margin_deg);
    CHECK(rows[i].peak_sens_db);
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double measured = rows[i].steady_err_norm / rows[0].steady_err_norm;
    const double predicted = std::hypot(gains[0], w) / std::hypot(gains[i], w);
    CHECK(measured == doctest::Approx(predicted).epsilon(0.05));
  }
  // run order does not depend on the worker count
  const auto serial = run_sweep(doc, "observer.gain", gains, 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(serial[i].steady_err_norm == rows[i].steady_err_norm);
  }
  std::ostringstream os;
  write_sweep_csv(os, rows);
  CHECK(os.str().rfind("value,steady_err_norm,peak_sens_db,phase_margin_deg\n50,", 0) == 0);
  CHECK(os.str().find(",\n") != std::string::npos);  // phase margin left blank
}

TEST_CASE("sweep over the servo inertia reports phase margins") {
  const auto rows = run_sweep(config("abc_servo.json"), "plant.j_m", {0.02, 0.01, 0.005}, 0);
  REQUIRE(rows[0].phase_margin_deg);
  CHECK(*rows[0].phase_margin_deg < *rows[1].phase_margin_deg);
  CHECK(*rows[1].phase_margin_deg < *rows[2].phase_margin_deg);
}

TEST_CASE("parameter overrides") {
  json doc = config("lti_sfb_sinusoid.json");
  set_parameter(doc, "controller.k.1", 12.5);
  CHECK(doc["controller"]["k"][1] == 12.5);
  set_parameter(doc, "plant.a.1.0", -1.0);
  CHECK(doc["plant"]["a"][1][0] == -1.0);
  CHECK_THROWS_AS(set_parameter(doc, "observer.nope.x", 1.0), ConfigError);
  CHECK_THROWS_AS(set_parameter(doc, "controller.k.5", 1.0), ConfigError);
  CHECK_THROWS_AS(set_parameter(doc, "", 1.0), ConfigError);
  // a typo in a leaf name is caught when the scenario is validated
  set_parameter(doc, "observer.gian", 1.0);
  CHECK_THROWS_AS(parse_scenario(doc), ConfigError);
}

TEST_CASE("output files") {
  const std::string cfg = (kSource / "configs" / "servo_dob1_constant.json").string();
  const fs::path out = scratch("servo.csv");
  cmd_simulate({cfg, out.string(), true, {}});
  CHECK(slurp(out).rfind("t,q,qd,v_f,u,tau_dis,tau_hat,err_norm\n", 0) == 0);
  CHECK_THROWS_AS(cmd_simulate({cfg, out.string(), false, {}}), InvalidInput);

  const fs::path lti = scratch("lti.csv");
  cmd_simulate({(kSource / "configs" / "lti_sfb_sinusoid.json").string(), lti.string(), true, {}});
  CHECK(slurp(lti).rfind("t,x_1,x_2,u,tau_dis_1,tau_dis_2,tau_hat_1,tau_hat_2,err_norm,V\n", 0) == 0);

  const fs::path bode = scratch("bode.csv");
  cmd_bode({(kSource / "configs" / "servo_bode.json").string(), bode.string(), true, {}});
  std::istringstream rows(slurp(bode));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "omega_rad_s,mag_db,phase_deg");
  std::vector<std::array<double, 3>> pts;
  while (std::getline(rows, line)) {
    std::array<double, 3> p{};
    char comma = 0;
    std::istringstream ls(line);
    ls >> p[0] >> comma >> p[1] >> comma >> p[2];
    pts.push_back(p);
  }
  REQUIRE(pts.size() == 801);
  // +20 dB/dec at low frequency, 0 dB at high frequency
  CHECK((pts[100][1] - pts[0][1]) / std::log10(pts[100][0] / pts[0][0]) == doctest::Approx(20.0).epsilon(1e-3));
  CHECK(std::abs(pts.back()[1]) < 1e-3);

  const fs::path locus = scratch("locus.csv");
  cmd_rootlocus({(kSource / "configs" / "abc_servo.json").string(), locus.string(), true, {}});
  std::istringstream lrows(slurp(locus));
  std::getline(lrows, line);
  CHECK(line == "alpha,re_1,im_1,re_2,im_2,re_3,im_3");
  int count = 0;
  while (std::getline(lrows, line)) {
    std::vector<double> v;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      v.push_back(std::stod(cell));
    }
    REQUIRE(v.size() == 7);
    CHECK(v[1] < 0.0);
    CHECK(v[3] < 0.0);
    CHECK(v[5] < 0.0);
    ++count;
  }
  CHECK(count == 50);
}

TEST_CASE("divergence keeps the finite prefix") {
  const json doc = {{"plant", {{"type", "lti"}, {"a", {{400.0}}}, {"b", {1.0}}, {"x0", {1.0}}}},
                    {"sim", {{"duration", 5.0}, {"step", 1e-3}}}};
  const auto traj = run(parse_scenario(doc));
  REQUIRE(traj.divergence);
  CHECK(traj.divergence->last_finite_index + 1 == traj.size());
  CHECK(traj.size() < 5001);
  CHECK(traj.state.back().allFinite());

  const fs::path cfg = scratch("diverge.json");
  std::ofstream(cfg) << doc.dump();
  const fs::path out = scratch("diverge.csv");
  CHECK_THROWS_AS(cmd_simulate({cfg.string(), out.string(), true, {}}), DivergenceError);
  std::istringstream rows(slurp(out));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(rows, line)) {
    ++lines;
  }
  CHECK(lines == traj.size() + 1);
}

TEST_CASE("transfer selection") {
  const auto s = parse_scenario(config("servo_bode.json"));
  const auto sens = scenario_transfer(s, "sensitivity");
  const auto ref = freq::servo_sensitivity(1000.0, 300.0, 1.0);
  for (double w : {0.1, 10.0, 1e3, 1e5}) {
    CHECK(std::abs(sens.at_frequency(w) - ref.at_frequency(w)) < 1e-12);
    CHECK(std::abs(scenario_transfer(s, "complementary").at_frequency(w) + ref.at_frequency(w) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(scenario_transfer(s, "loop"), UnsupportedConfiguration);
  CHECK_THROWS_AS(scenario_transfer(parse_scenario(config("two_link_manip.json")), "sensitivity"),
                  UnsupportedConfiguration);
  CHECK(alpha_grid(s).size() == 50);
}
