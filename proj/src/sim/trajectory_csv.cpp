#include "dob/sim/trajectory_csv.hpp"

#include "dob/format.hpp"

namespace dob::sim {
namespace {

void header(std::ostream& os, const std::string& name, Eigen::Index n) {
  if (n == 1) {
    os << ',' << name;
    return;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    os << ',' << name << '_' << (i + 1);
  }
}

void values(std::ostream& os, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    os << ',' << format_double(v(i));
  }
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << 't';
  for (const auto& name : traj.state_names) {
    os << ',' << name;
  }
  if (traj.size() > 0) {
    header(os, "u", traj.u.front().size());
    header(os, "tau_dis", traj.tau_dis.front().size());
    header(os, "tau_hat", traj.tau_hat.front().size());
  } else {
    os << ",u,tau_dis,tau_hat";
  }
  os << ",err_norm";
  if (traj.has_v) {
    os << ",V";
  }
  os << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << format_double(traj.t[i]);
    values(os, traj.state[i]);
    values(os, traj.u[i]);
    values(os, traj.tau_dis[i]);
    values(os, traj.tau_hat[i]);
    os << ',' << format_double(traj.err_norm[i]);
    if (traj.has_v) {
      os << ',' << format_double(traj.v[i]);
    }
    os << '\n';
  }
}

}  // namespace dob::sim
