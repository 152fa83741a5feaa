#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "mbeon/sampled_profile.hpp"
#include "mbeon/units.hpp"

namespace mbeon {

/// Raman gain profile C_r(f_ref, delta_f) tabulated for delta_f >= 0.
/// The profile is odd in delta_f; positive delta_f means the pump sits
/// above the signal, i.e. the signal gains power.
struct RamanProfile {
  SampledProfile gain;          // delta_f [Hz] -> C_r [1/(W m)] at the reference pump
  double reference_pump_hz = 193.4e12;
  bool pump_frequency_scaling = true;

  void validate() const {
    if (gain.min_x() != 0.0)
      throw std::invalid_argument("RamanProfile: table must start at delta_f = 0");
    if (gain.ys().front() != 0.0)
      throw std::invalid_argument("RamanProfile: C_r(0) must be 0");
    if (reference_pump_hz <= 0.0)
      throw std::invalid_argument("RamanProfile: reference pump must be > 0");
  }
};

/// C_r(f_pump, delta_f), odd in delta_f, optionally scaled linearly with the
/// pump frequency relative to the profile's reference pump.
inline double raman_gain(const RamanProfile& profile, double f_pump_hz, double delta_f_hz) {
  if (delta_f_hz == 0.0) return 0.0;
  double mag = profile.gain.value_at(std::abs(delta_f_hz));
  if (profile.pump_frequency_scaling) mag *= f_pump_hz / profile.reference_pump_hz;
  return delta_f_hz > 0.0 ? mag : -mag;
}

/// Frequency-dependent fiber description. Loss and effective area come in as
/// tabulated data (the usual situation: both are measured, not modeled);
/// dispersion is the Taylor expansion around f0.
struct FiberSpec {
  SampledProfile loss_db_per_km;  // f [Hz] -> alpha [dB/km]
  SampledProfile aeff_m2;         // f [Hz] -> A_eff [m^2]
  RamanProfile raman;
  double beta2 = -21.86e-27;      // s^2/m at f0
  double beta3 = 0.1331e-39;      // s^3/m
  double beta4 = -2.7e-55;        // s^4/m
  double f0_hz = kSpeedOfLight / 1550e-9;
  double n2 = 2.6e-20;            // m^2/W

  [[nodiscard]] double attenuation_per_m(double f_hz) const {
    return db_per_km_to_neper_per_m(loss_db_per_km.value_at(f_hz));
  }

  void validate() const {
    for (double v : loss_db_per_km.ys())
      if (v <= 0.0) throw std::invalid_argument("FiberSpec: loss must be > 0 everywhere");
    for (double v : aeff_m2.ys())
      if (v <= 0.0) throw std::invalid_argument("FiberSpec: A_eff must be > 0 everywhere");
    raman.validate();
  }
};

/// Effective dispersion for the channel pair (f_i, f_j):
///   beta2 + pi beta3 (f_i + f_j - 2 f0)
///         + (2 pi^2 / 3) beta4 [(f_i-f0)^2 + (f_i-f0)(f_j-f0) + (f_j-f0)^2]
inline double effective_beta2(const FiberSpec& fiber, double f_i, double f_j) {
  double di = f_i - fiber.f0_hz;
  double dj = f_j - fiber.f0_hz;
  constexpr double pi = std::numbers::pi;
  return fiber.beta2 + pi * fiber.beta3 * (di + dj) +
         (2.0 * pi * pi / 3.0) * fiber.beta4 * (di * di + di * dj + dj * dj);
}

/// Pairwise nonlinearity coefficient gamma^{i,j} = (2 pi f_i / c) * 2 n2 / (A_eff(f_i) + A_eff(f_j)).
inline double pair_gamma(const FiberSpec& fiber, double f_i, double f_j) {
  double a = fiber.aeff_m2.value_at(f_i) + fiber.aeff_m2.value_at(f_j);
  return (2.0 * std::numbers::pi * f_i / kSpeedOfLight) * 2.0 * fiber.n2 / a;
}

struct AmplifierSpec {
  std::string band;
  double noise_figure_db = 4.5;
  double max_output_power_dbm = 27.0;
  double booster_gain_db = 20.0;

  void validate() const {
    if (noise_figure_db < 3.0)
      throw std::invalid_argument("AmplifierSpec: noise figure below the 3 dB quantum limit (" + band + ")");
  }
};

}  // namespace mbeon
