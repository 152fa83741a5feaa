#pragma once

#include <map>
#include <string>
#include <vector>

#include "mbeon/band_plan.hpp"
#include "mbeon/fiber.hpp"
#include "mbeon/span.hpp"
#include "mbeon/units.hpp"

namespace mbeon::defaults {

// Representative SSMF (zero water peak) curves. The bundled loss and
// effective-area tables are synthetic stand-ins sampled from smooth fits to
// published SSMF data: loss has its minimum near 1567 nm and rises toward the
// S-band edge, A_eff is linear in wavelength around 85 um^2 at 1550 nm.
// Deployments with measured data should load their own tables instead.

inline double loss_db_per_km_at(double f_hz) {
  double lam_nm = wavelength_m(f_hz) * 1e9;
  double d = lam_nm - 1567.0;
  return 0.184 + 3.0e-6 * d * d;
}

inline double aeff_m2_at(double f_hz) {
  double lam_nm = wavelength_m(f_hz) * 1e9;
  return (85.0 + 0.07 * (lam_nm - 1550.0)) * 1e-12;
}

inline SampledProfile loss_profile(double f_lo_hz = 182e12, double f_hi_hz = 208e12,
                                   double step_hz = 500e9) {
  std::vector<double> xs, ys;
  for (double f = f_lo_hz; f <= f_hi_hz + 1.0; f += step_hz) {
    xs.push_back(f);
    ys.push_back(loss_db_per_km_at(f));
  }
  return SampledProfile(std::move(xs), std::move(ys), "default loss");
}

inline SampledProfile aeff_profile(double f_lo_hz = 182e12, double f_hi_hz = 208e12,
                                   double step_hz = 500e9) {
  std::vector<double> xs, ys;
  for (double f = f_lo_hz; f <= f_hi_hz + 1.0; f += step_hz) {
    xs.push_back(f);
    ys.push_back(aeff_m2_at(f));
  }
  return SampledProfile(std::move(xs), std::move(ys), "default A_eff");
}

/// SSMF-like Raman gain curve, peak ~0.36 1/(W km) at ~13.5 THz, tabulated at
/// the 193.4 THz reference pump with linear pump-frequency scaling.
inline RamanProfile raman_profile() {
  static const std::vector<double> df_thz = {
      0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 13.5,
      14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 28, 30};
  static const std::vector<double> cr_per_w_km = {
      0, 0.028, 0.058, 0.085, 0.110, 0.131, 0.151, 0.169, 0.188, 0.208,
      0.231, 0.258, 0.303, 0.354, 0.360, 0.333, 0.233, 0.153, 0.105,
      0.076, 0.061, 0.052, 0.045, 0.043, 0.037, 0.025, 0.015, 0.003, 0};
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < df_thz.size(); ++i) {
    xs.push_back(df_thz[i] * 1e12);
    ys.push_back(cr_per_w_km[i] * 1e-3);  // 1/(W km) -> 1/(W m)
  }
  RamanProfile p;
  p.gain = SampledProfile(std::move(xs), std::move(ys), "default Raman gain");
  p.reference_pump_hz = 193.4e12;
  p.pump_frequency_scaling = true;
  return p;
}

/// Triangular analytic Raman gain, handy for tests with controlled slopes.
inline RamanProfile triangular_raman(double peak_per_w_m = 0.36e-3, double peak_df_hz = 13.5e12,
                                     double cutoff_df_hz = 30e12) {
  RamanProfile p;
  p.gain = SampledProfile({0.0, peak_df_hz, cutoff_df_hz}, {0.0, peak_per_w_m, 0.0},
                          "triangular Raman gain");
  p.reference_pump_hz = 193.4e12;
  p.pump_frequency_scaling = true;
  return p;
}

inline FiberSpec fiber() {
  FiberSpec f;
  f.loss_db_per_km = loss_profile();
  f.aeff_m2 = aeff_profile();
  f.raman = raman_profile();
  return f;
}

inline std::map<std::string, AmplifierSpec> band_amplifiers() {
  std::map<std::string, AmplifierSpec> amps;
  amps["L"] = AmplifierSpec{"L", 5.0, 27.0, 20.0};
  amps["C"] = AmplifierSpec{"C", 4.5, 27.0, 20.0};
  amps["S"] = AmplifierSpec{"S", 6.0, 27.0, 20.0};
  return amps;
}

/// Named plans: "C" (6 THz), "LC" (6+6) and "LCS" (6+6+8, 20 THz in total).
/// Band edges are anchored so the same band occupies the same absolute
/// frequencies in every plan (L at 184.4 THz, C at 190.8, S at 197.2).
inline BandPlan band_plan(const std::string& name = "LCS") {
  BandPlan plan;
  if (name == "C") {
    plan.start_hz = 190.8e12;
    plan.bands = {{"C", 6e12}};
  } else if (name == "LC") {
    plan.start_hz = 184.4e12;
    plan.bands = {{"L", 6e12}, {"C", 6e12}};
  } else if (name == "LCS") {
    plan.start_hz = 184.4e12;
    plan.bands = {{"L", 6e12}, {"C", 6e12}, {"S", 8e12}};
  } else {
    throw std::invalid_argument("unknown band plan: " + name);
  }
  return plan;
}

inline SpanSpec span(double length_m, double lumped_loss_db = 0.0) {
  SpanSpec s;
  s.length_m = length_m;
  s.fiber = fiber();
  s.amplifiers = band_amplifiers();
  s.lumped_loss_db = lumped_loss_db;
  return s;
}

}  // namespace mbeon::defaults
