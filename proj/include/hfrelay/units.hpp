#pragma once

#include <cmath>

namespace hfrelay {

// All internal quantities are linear watts / linear ratios; dB and dBm appear
// only at the CLI and config boundary.

inline double dbw_to_watts(double dbw) { return std::pow(10.0, dbw / 10.0); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbw(double watts) { return 10.0 * std::log10(watts); }

inline double ratio_to_db(double ratio) { return 10.0 * std::log10(ratio); }

} // namespace hfrelay
