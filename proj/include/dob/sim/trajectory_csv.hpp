#pragma once

#include "dob/sim/runner.hpp"

#include <ostream>

namespace dob::sim {

/// t,<state cols>,u,tau_dis,tau_hat,err_norm[,V]
/// Vector-valued signals get _1, _2, ... suffixes.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace dob::sim
