#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mbeon/band_plan.hpp"
#include "mbeon/pep.hpp"

namespace mbeon {

/// Per-channel three-parameter effective-loss surrogate
///   alpha(z, f_i) = alpha0_i + alpha1_i * exp(-sigma_i z)
/// fitted to a solved power evolution profile. alpha0 is the loss without
/// ISRS, alpha1 the extra loss at the start of the span, sigma its decay
/// rate. M is the auxiliary integer parameter derived from the fit.
struct FittedLossModel {
  struct ChannelFit {
    double alpha0 = 0.0;  // 1/m
    double alpha1 = 0.0;  // 1/m
    double sigma = 0.0;   // 1/m
  };
  std::vector<ChannelFit> channels;
  double fit_rms_error_db = 0.0;  // worst channel
  int m_parameter = 1;

  /// Accumulated model loss in Nepers at distance z:
  ///   alpha0 z + (alpha1/sigma)(1 - exp(-sigma z))
  [[nodiscard]] double accumulated_loss(std::size_t channel, double z_m) const {
    const ChannelFit& c = channels[channel];
    return c.alpha0 * z_m + c.alpha1 / c.sigma * (1.0 - std::exp(-c.sigma * z_m));
  }
};

namespace detail {

constexpr double kSigmaLo = 1e-7;
constexpr double kSigmaHi = 1e-3;
constexpr double kSigmaTol = 1e-9;

struct ChannelFitResult {
  double alpha0, alpha1, sigma, rms_neper;
};

// Closed-form (alpha0, alpha1) for a fixed sigma; y is accumulated loss in
// Nepers on a uniform z grid. Computing exp(-sigma z_k) by recurrence keeps
// a full golden-section search cheap even on dense solver output.
inline ChannelFitResult fit_one_channel(const std::vector<double>& z, const std::vector<double>& y,
                                        double szz, double szy) {
  const std::size_t s = z.size();
  const double dz = z[1] - z[0];

  auto eval = [&](double sigma) {
    double d = std::exp(-sigma * dz);
    double e = 1.0;
    double sbb = 0.0, szb = 0.0, sby = 0.0;
    for (std::size_t k = 0; k < s; ++k) {
      double b = (1.0 - e) / sigma;
      sbb += b * b;
      szb += z[k] * b;
      sby += b * y[k];
      e *= d;
    }
    double det = szz * sbb - szb * szb;
    double a0, a1;
    if (std::abs(det) <= 1e-12 * szz * sbb) {
      a0 = szy / szz;
      a1 = 0.0;
    } else {
      a0 = (szy * sbb - sby * szb) / det;
      a1 = (sby * szz - szy * szb) / det;
    }
    // residual sum of squares without a second pass over z
    double ss_term = -2.0 * (a0 * szy + a1 * sby) + a0 * a0 * szz + a1 * a1 * sbb + 2.0 * a0 * a1 * szb;
    return std::tuple<double, double, double>(a0, a1, ss_term);
  };

  double syy = 0.0;
  for (double v : y) syy += v * v;

  auto rms_of = [&](double sigma) {
    auto [a0, a1, t] = eval(sigma);
    double ss = syy + t;
    return ss > 0.0 ? std::sqrt(ss / static_cast<double>(s)) : 0.0;
  };

  // golden-section minimization of the RMS residual over sigma
  const double invphi = 0.6180339887498949;
  double a = kSigmaLo, b = kSigmaHi;
  double c = b - invphi * (b - a);
  double d2 = a + invphi * (b - a);
  double fc = rms_of(c), fd = rms_of(d2);
  while (b - a > kSigmaTol) {
    if (fc < fd) {
      b = d2;
      d2 = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = rms_of(c);
    } else {
      a = c;
      c = d2;
      fc = fd;
      d2 = a + invphi * (b - a);
      fd = rms_of(d2);
    }
  }
  double sigma = 0.5 * (a + b);
  auto [a0, a1, t] = eval(sigma);
  double ss = syy + t;
  return {a0, a1, sigma, ss > 0.0 ? std::sqrt(ss / static_cast<double>(s)) : 0.0};
}

}  // namespace detail

/// Fits the three-parameter loss surrogate to every channel of a solved PEP.
/// Given sigma the (alpha0, alpha1) pair is solved in closed form by linear
/// least squares on ln P; sigma itself comes from a bounded golden-section
/// search over [1e-7, 1e-3] 1/m.
inline FittedLossModel fit_loss_model(const PowerEvolutionProfile& pep, const ChannelGrid& grid) {
  if (pep.channels != grid.size())
    throw std::invalid_argument("fit_loss_model: profile/grid size mismatch");
  if (pep.samples() < 10)
    throw std::invalid_argument("fit_loss_model: need at least 10 z samples");

  const std::size_t s = pep.samples();
  const std::vector<double>& z = pep.z_m;
  double szz = 0.0;
  for (double v : z) szz += v * v;

  FittedLossModel model;
  model.channels.resize(pep.channels);
  double worst_rms = 0.0;
  double worst_ratio = 0.0;
  std::vector<double> y(s);
  for (std::size_t ch = 0; ch < pep.channels; ++ch) {
    double p0 = pep.at(0, ch);
    if (p0 <= 0.0)
      throw std::invalid_argument("fit_loss_model: degenerate fit, zero power on channel " +
                               std::to_string(ch));
    double szy = 0.0;
    for (std::size_t k = 0; k < s; ++k) {
      y[k] = std::log(p0 / pep.at(k, ch));
      szy += z[k] * y[k];
    }
    auto r = detail::fit_one_channel(z, y, szz, szy);
    model.channels[ch] = {r.alpha0, r.alpha1, r.sigma};
    worst_rms = std::max(worst_rms, r.rms_neper);
    worst_ratio = std::max(worst_ratio, std::abs(2.0 * r.alpha1 / r.sigma));
  }
  model.fit_rms_error_db = worst_rms * 10.0 / 2.302585092994046;  // Nepers -> dB
  model.m_parameter = static_cast<int>(std::floor(10.0 * worst_ratio)) + 1;
  return model;
}

}  // namespace mbeon
