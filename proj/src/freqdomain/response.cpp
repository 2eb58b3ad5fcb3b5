#include "dob/freqdomain/response.hpp"

#include "dob/error.hpp"
#include "dob/numerics/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace dob::freq {
namespace tol = numerics::tol;

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double wrap180(double deg) {
  // into (-180, 180]
  double w = std::remainder(deg, 360.0);
  if (w <= -180.0) {
    w += 360.0;
  }
  return w;
}

void check_not_on_pole(const RationalTransfer& tf, double omega) {
  const auto& d = tf.den().coeffs();
  double scale = 0.0;
  double wp = 1.0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) {
    scale += std::abs(*it) * wp;
    wp *= omega;
  }
  if (std::abs(tf.den()(std::complex<double>(0.0, omega))) <= tol::kPoleOnAxis * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "pole on the imaginary axis at omega = " << omega << " rad/s; split the frequency grid";
    throw PoleOnAxis(os.str(), omega);
  }
}

// Frequency range covering the loop's dynamics with three decades of margin.
std::pair<double, double> margin_range(const RationalTransfer& loop) {
  double lo = 1.0;
  double hi = 1.0;
  auto widen = [&](const std::vector<std::complex<double>>& roots) {
    for (const auto& r : roots) {
      const double m = std::abs(r);
      if (m > 0.0) {
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      }
    }
  };
  widen(loop.poles());
  widen(loop.zeros());
  return {lo * 1e-3, hi * 1e3};
}

// Phase at omega, placed within 180 degrees of `near`.
double phase_near(const RationalTransfer& tf, double omega, double near) {
  const double raw = std::arg(tf.at_frequency(omega)) * kRadToDeg;
  return near + std::remainder(raw - near, 360.0);
}

template <typename F>
double bisect_log(F&& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < tol::kMarginBisectionSteps; ++i) {
    const double m = std::sqrt(a * b);
    const double fm = f(m);
    if (fm == 0.0) {
      return m;
    }
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return std::sqrt(a * b);
}

}  // namespace

std::vector<double> logspace(double omega_min, double omega_max, int points) {
  if (!(omega_min > 0.0) || !(omega_max > omega_min) || points < 2) {
    throw InvalidInput("frequency grid needs 0 < omega_min < omega_max and at least 2 points");
  }
  std::vector<double> w(static_cast<std::size_t>(points));
  const double a = std::log10(omega_min);
  const double b = std::log10(omega_max);
  for (int i = 0; i < points; ++i) {
    w[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (points - 1));
  }
  w.front() = omega_min;
  w.back() = omega_max;
  return w;
}

std::vector<double> unwrap_degrees(std::vector<double> phase) {
  double offset = 0.0;
  for (std::size_t i = 1; i < phase.size(); ++i) {
    const double prev = phase[i - 1];
    double cur = phase[i] + offset;
    while (cur - prev > tol::kUnwrapJumpDeg) {
      cur -= 360.0;
      offset -= 360.0;
    }
    while (cur - prev < -tol::kUnwrapJumpDeg) {
      cur += 360.0;
      offset += 360.0;
    }
    phase[i] = cur;
  }
  return phase;
}

FrequencyResponse bode(const RationalTransfer& tf, double omega_min, double omega_max, int points) {
  FrequencyResponse fr;
  fr.omega = logspace(omega_min, omega_max, points);
  fr.magnitude_db.reserve(fr.omega.size());
  std::vector<double> phase;
  phase.reserve(fr.omega.size());
  for (double w : fr.omega) {
    check_not_on_pole(tf, w);
    const auto v = tf.at_frequency(w);
    fr.magnitude_db.push_back(20.0 * std::log10(std::abs(v)));
    phase.push_back(std::arg(v) * kRadToDeg);
  }
  fr.phase_deg = unwrap_degrees(std::move(phase));
  return fr;
}

StabilityMargins margins(const RationalTransfer& loop) {
  if (!loop.is_proper()) {
    throw InvalidInput("margins: loop transfer must be proper");
  }
  StabilityMargins out;
  if (loop.is_zero()) {
    return out;
  }
  const auto [lo, hi] = margin_range(loop);
  const int decades = static_cast<int>(std::ceil(std::log10(hi / lo)));
  const auto grid = logspace(lo, hi, decades * tol::kMarginPointsPerDecade + 1);

  std::vector<double> log_mag;
  std::vector<double> phase;
  log_mag.reserve(grid.size());
  phase.reserve(grid.size());
  for (double w : grid) {
    check_not_on_pole(loop, w);
    const auto v = loop.at_frequency(w);
    log_mag.push_back(std::log(std::abs(v)));
    phase.push_back(std::arg(v) * kRadToDeg);
  }
  phase = unwrap_degrees(std::move(phase));

  auto log_mag_at = [&](double w) { return std::log(std::abs(loop.at_frequency(w))); };

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    // gain crossover
    const bool hit = log_mag[i] == 0.0 || (log_mag[i] < 0.0) != (log_mag[i + 1] < 0.0);
    if (hit && !(log_mag[i + 1] == 0.0 && i + 2 < grid.size())) {
      const double wc = log_mag[i] == 0.0 ? grid[i] : bisect_log(log_mag_at, grid[i], grid[i + 1]);
      const double ph = phase_near(loop, wc, 0.5 * (phase[i] + phase[i + 1]));
      const double pm = wrap180(180.0 + ph);
      if (!out.has_gain_crossover || pm < out.phase_margin_deg) {
        out.phase_margin_deg = pm;
        out.gain_crossover = wc;
      }
      out.has_gain_crossover = true;
    }

    // phase crossover at -180 + 360k
    const double a = phase[i];
    const double b = phase[i + 1];
    const double k_lo = std::ceil((std::min(a, b) + 180.0) / 360.0);
    const double k_hi = std::floor((std::max(a, b) + 180.0) / 360.0);
    for (double k = k_lo; k <= k_hi; k += 1.0) {
      const double target = -180.0 + 360.0 * k;
      if (!((a - target) * (b - target) < 0.0)) {
        continue;
      }
      const double mid = 0.5 * (a + b);
      auto f = [&](double w) { return phase_near(loop, w, mid) - target; };
      const double wp = bisect_log(f, grid[i], grid[i + 1]);
      const double gm = -20.0 * std::log10(std::abs(loop.at_frequency(wp)));
      if (!out.has_phase_crossover || gm < out.gain_margin_db) {
        out.gain_margin_db = gm;
        out.phase_crossover = wp;
      }
      out.has_phase_crossover = true;
    }
  }
  return out;
}

double waterbed_integral(const RationalTransfer& s, double omega_max, double omega_min) {
  if (!(omega_min > 0.0) || !(omega_max > omega_min)) {
    throw InvalidInput("waterbed_integral: need 0 < omega_min < omega_max");
  }
  if (!s.is_stable()) {
    throw InvalidInput("waterbed_integral: S must be stable");
  }
  // substitute w = e^u: integrand ln|S(j e^u)| e^u du
  auto h = [&](double u) {
    const double w = std::exp(u);
    return std::log(std::abs(s.at_frequency(w))) * w;
  };
  const double ua = std::log(omega_min);
  const double ub = std::log(omega_max);
  const double span = ub - ua;
  const int panels = std::max(64, static_cast<int>(40.0 * span));
  const double abs_tol = 1e-7;

  struct Segment {
    double a, b, fa, fb;
    int depth;
  };
  double total = 0.0;
  std::vector<Segment> stack;
  for (int p = 0; p < panels; ++p) {
    const double a = ua + span * p / panels;
    const double b = ua + span * (p + 1) / panels;
    stack.push_back({a, b, h(a), h(b), 0});
    while (!stack.empty()) {
      const Segment seg = stack.back();
      stack.pop_back();
      const double m = 0.5 * (seg.a + seg.b);
      const double fm = h(m);
      const double coarse = 0.5 * (seg.b - seg.a) * (seg.fa + seg.fb);
      const double fine = 0.25 * (seg.b - seg.a) * (seg.fa + 2.0 * fm + seg.fb);
      const double local_tol = abs_tol * (seg.b - seg.a) / span;
      if (std::abs(fine - coarse) <= 3.0 * local_tol || seg.depth >= 40) {
        total += fine;
      } else {
        stack.push_back({seg.a, m, seg.fa, fm, seg.depth + 1});
        stack.push_back({m, seg.b, fm, seg.fb, seg.depth + 1});
      }
    }
  }
  return total;
}

double peak_magnitude(const RationalTransfer& tf, double omega_min, double omega_max) {
  const int decades = std::max(1, static_cast<int>(std::ceil(std::log10(omega_max / omega_min))));
  const auto grid = logspace(omega_min, omega_max, decades * 200 + 1);
  auto mag = [&](double w) { return std::abs(tf.at_frequency(w)); };
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double m = mag(grid[i]);
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  // golden-section on log(omega) between the neighbours of the grid maximum
  double a = std::log(grid[best == 0 ? 0 : best - 1]);
  double b = std::log(grid[std::min(best + 1, grid.size() - 1)]);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  for (int i = 0; i < 100; ++i) {
    if (mag(std::exp(c)) > mag(std::exp(d))) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return std::max(best_mag, mag(std::exp(0.5 * (a + b))));
}

}  // namespace dob::freq
