#pragma once

#include <cmath>

namespace mbeon {

inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kPlanck = 6.62607015e-34;         // J s

// Internal convention is SI throughout (Hz, W, m, power Nepers per meter).
// dB and dBm appear only at interfaces.

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

// alpha[1/m] = alpha[dB/km] * ln(10) / 1e4
inline double db_per_km_to_neper_per_m(double db_km) {
  return db_km * 2.302585092994046e-4;
}

inline double wavelength_m(double frequency_hz) { return kSpeedOfLight / frequency_hz; }
inline double frequency_hz(double wavelength_m) { return kSpeedOfLight / wavelength_m; }

}  // namespace mbeon
