#include "dob/freqdomain/csv.hpp"

#include "dob/format.hpp"

#include <algorithm>

namespace dob::freq {

void write_frequency_response_csv(std::ostream& os, const FrequencyResponse& fr) {
  os << "omega_rad_s,mag_db,phase_deg\n";
  for (std::size_t i = 0; i < fr.omega.size(); ++i) {
    os << format_double(fr.omega[i]) << ',' << format_double(fr.magnitude_db[i]) << ','
       << format_double(fr.phase_deg[i]) << '\n';
  }
}

void write_root_locus_csv(std::ostream& os, const std::vector<LocusRow>& rows) {
  std::size_t width = 0;
  for (const auto& r : rows) {
    width = std::max(width, r.poles.size());
  }
  os << "alpha";
  for (std::size_t k = 1; k <= width; ++k) {
    os << ",re_" << k << ",im_" << k;
  }
  os << '\n';
  for (const auto& r : rows) {
    os << format_double(r.alpha);
    for (std::size_t k = 0; k < width; ++k) {
      if (k < r.poles.size()) {
        os << ',' << format_double(r.poles[k].real()) << ',' << format_double(r.poles[k].imag());
      } else {
        os << ",,";
      }
    }
    os << '\n';
  }
}

}  // namespace dob::freq
