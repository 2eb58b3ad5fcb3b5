#pragma once

#include "dob/freqdomain/response.hpp"
#include "dob/freqdomain/root_locus.hpp"

#include <ostream>

namespace dob::freq {

// omega_rad_s,mag_db,phase_deg
void write_frequency_response_csv(std::ostream& os, const FrequencyResponse& fr);

// alpha,re_1,im_1,re_2,im_2,...
void write_root_locus_csv(std::ostream& os, const std::vector<LocusRow>& rows);

}  // namespace dob::freq
