#pragma once

#include "dob/freqdomain/rational_transfer.hpp"

#include <limits>
#include <vector>

namespace dob::freq {

struct FrequencyResponse {
  std::vector<double> omega;         // rad/s, strictly increasing
  std::vector<double> magnitude_db;
  std::vector<double> phase_deg;     // unwrapped
};

std::vector<double> logspace(double omega_min, double omega_max, int points);

/// Shifts each sample by multiples of 360 so that adjacent samples never jump
/// by more than 180 degrees.
std::vector<double> unwrap_degrees(std::vector<double> phase);

/// Log-spaced frequency response. Throws PoleOnAxis if a grid point sits on a
/// purely imaginary pole, InvalidInput for a bad grid.
FrequencyResponse bode(const RationalTransfer& tf, double omega_min, double omega_max, int points);

struct StabilityMargins {
  double gain_margin_db = std::numeric_limits<double>::infinity();
  double phase_margin_deg = std::numeric_limits<double>::infinity();
  double gain_crossover = std::numeric_limits<double>::quiet_NaN();   // |L| = 1
  double phase_crossover = std::numeric_limits<double>::quiet_NaN();  // arg L = -180
  bool has_gain_crossover = false;
  bool has_phase_crossover = false;
};

/// Gain and phase margins of a loop transfer. Crossovers are bracketed on a
/// log grid (400 points per decade) spanning three decades beyond the loop's
/// pole/zero magnitudes, then refined by bisection. With several crossings
/// the smallest margin is reported. A missing crossover leaves the margin
/// infinite with the has_* flag false.
StabilityMargins margins(const RationalTransfer& loop);

/// Integral of ln|S(jw)| over [omega_min, omega_max], by adaptive trapezoid
/// on a logarithmic frequency axis. Throws InvalidInput if S is unstable.
double waterbed_integral(const RationalTransfer& s, double omega_max, double omega_min = 1e-2);

/// max |tf(jw)| over a dense log grid refined by golden-section search.
double peak_magnitude(const RationalTransfer& tf, double omega_min, double omega_max);

}  // namespace dob::freq
