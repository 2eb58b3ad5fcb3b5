#pragma once

#include "dob/numerics/linalg.hpp"

#include <functional>

namespace dob::numerics {

using Derivative = std::function<Vector(double t, const Vector& x)>;

// Classical fourth-order Runge-Kutta step from (t, x) with step h. Throws
// DivergenceError (with the stage time) if any stage derivative or the result
// is non-finite, and InvalidInput for h <= 0.
Vector rk4_step(const Derivative& f, const Vector& x, double t, double h);

}  // namespace dob::numerics
