#include "dob/numerics/integrate.hpp"

#include "dob/error.hpp"

#include <sstream>

namespace dob::numerics {
namespace {

void check_stage(const Vector& k, double t) {
  if (!k.allFinite()) {
    std::ostringstream os;
    os.precision(17);
    os << "rk4_step: non-finite derivative at t = " << t;
    throw DivergenceError(os.str(), t);
  }
}

}  // namespace

Vector rk4_step(const Derivative& f, const Vector& x, double t, double h) {
  if (!(h > 0.0)) {
    throw InvalidInput("rk4_step: step must be positive");
  }
  const double half = 0.5 * h;
  const Vector k1 = f(t, x);
  check_stage(k1, t);
  const Vector k2 = f(t + half, x + half * k1);
  check_stage(k2, t + half);
  const Vector k3 = f(t + half, x + half * k2);
  check_stage(k3, t + half);
  const Vector k4 = f(t + h, x + h * k3);
  check_stage(k4, t + h);
  Vector next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  check_stage(next, t + h);
  return next;
}

}  // namespace dob::numerics
