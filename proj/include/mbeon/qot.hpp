#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mbeon/band_plan.hpp"
#include "mbeon/loss_fit.hpp"
#include "mbeon/pep.hpp"
#include "mbeon/span.hpp"
#include "mbeon/units.hpp"

namespace mbeon {

struct TransceiverSpec {
  double symbol_rate_baud = 64e9;
  double roll_off = 0.05;
  double fec_overhead = 0.25;
  double snr_trx_db = 26.0;
  // required GSNR in dB for modulation cardinality m = 1..6
  std::vector<double> modulation_thresholds_db = {3.45, 6.5, 8.4, 12.4, 16.5, 19.3};

  [[nodiscard]] int max_cardinality() const {
    return static_cast<int>(modulation_thresholds_db.size());
  }
  [[nodiscard]] double lci_rate_bps(int m) const { return static_cast<double>(m) * 100e9; }

  void validate() const {
    if (modulation_thresholds_db.empty())
      throw std::invalid_argument("TransceiverSpec: no modulation thresholds");
    for (std::size_t i = 1; i < modulation_thresholds_db.size(); ++i)
      if (modulation_thresholds_db[i] <= modulation_thresholds_db[i - 1])
        throw std::invalid_argument("TransceiverSpec: thresholds must be strictly increasing");
    if (symbol_rate_baud <= 0.0) throw std::invalid_argument("TransceiverSpec: symbol rate must be > 0");
  }
};

struct PenaltyConfig {
  double filtering_db_per_roadm = 0.5;    // SNR_Pen_fil
  bool filtering_per_hop = true;          // false: one fixed end-to-end penalty
  double aging_margin_db = 1.0;           // SNR_Pen_age
  std::pair<double, double> connector_loss_db = {0.2, 0.5};      // per connector, 2 per span
  std::pair<double, double> splice_loss_db_per_km = {0.01, 0.06};
  double splice_section_km = 2.0;
};

struct SpanNoiseBreakdown {
  std::vector<double> p_ase_w;
  std::vector<double> p_nli_w;
  std::vector<double> gain_db;
  std::vector<double> gsnr_db;
  std::vector<double> osnr_db;

  [[nodiscard]] std::size_t channels() const { return gsnr_db.size(); }
};

/// ASE power  P_ASE = n_F h f (G - 1) R_s  with everything linear.
inline double ase_power(double gain_linear, double noise_figure_linear, double f_hz,
                        double symbol_rate_baud) {
  if (gain_linear < 1.0)
    throw std::invalid_argument("ase_power: amplifier gain below 1 (must amplify)");
  return noise_figure_linear * kPlanck * f_hz * (gain_linear - 1.0) * symbol_rate_baud;
}

struct AmplifierGains {
  std::vector<double> gain_db;
  bool clamped = false;  // some channel required less than 0 dB of gain
};

/// Gain needed to bring `received` back to `target`, plus the span's lumped
/// losses which the amplifier must also compensate.
inline AmplifierGains amplifier_gains(const LaunchProfile& received, const LaunchProfile& target,
                                      double lumped_loss_db = 0.0) {
  if (received.size() != target.size())
    throw std::invalid_argument("amplifier_gains: size mismatch");
  AmplifierGains out;
  out.gain_db.resize(received.size());
  for (std::size_t i = 0; i < received.size(); ++i) {
    if (received[i] <= 0.0)
      throw std::invalid_argument("amplifier_gains: received power must be > 0");
    double g = linear_to_db(target[i] / received[i]);
    if (g < 0.0) {
      g = 0.0;
      out.clamped = true;
    }
    out.gain_db[i] = g + lumped_loss_db;
  }
  return out;
}

/// Pluggable NLI estimator interface. The stock estimator below is an
/// incoherent-GN approximation built on the fitted effective-loss model;
/// swapping in a different closed-form model only means providing another
/// implementation here.
class NliEstimator {
 public:
  virtual ~NliEstimator() = default;
  [[nodiscard]] virtual std::vector<double> evaluate(const SpanSpec& span,
                                                     const FittedLossModel& fit,
                                                     const ChannelGrid& grid,
                                                     const LaunchProfile& launch) const = 0;
};

class IncoherentGnNli final : public NliEstimator {
 public:
  /// P_NLI,i = eta_SPM,i P_i^3 + sum_{j != i} eta_XPM,ij P_i P_j^2 with
  ///   eta_SPM,i  = (16/27) gamma_ii^2 L_eff,i^2 asinh((pi^2/2)|b2_ii| Lbar_i B_i^2) / (pi |b2_ii| Lbar_i B_i^2)
  ///   eta_XPM,ij = (32/27) gamma_ij^2 L_eff,j^2 asinh(pi^2 |b2_ij| Lbar_j B_j |f_i-f_j|) / (2 pi |b2_ij| Lbar_j B_j |f_i-f_j|)
  /// L_eff,k is integrated numerically from the fitted loss model and
  /// Lbar_k = 1/alpha0_k.
  [[nodiscard]] std::vector<double> evaluate(const SpanSpec& span, const FittedLossModel& fit,
                                             const ChannelGrid& grid,
                                             const LaunchProfile& launch) const override {
    const std::size_t n = grid.size();
    if (fit.channels.size() != n || launch.size() != n)
      throw std::invalid_argument("nli_power: fit/launch must cover all channels");
    for (std::size_t i = 0; i < n; ++i)
      if (grid[i].bandwidth_hz <= 0.0)
        throw std::invalid_argument("nli_power: zero channel bandwidth");

    std::vector<double> leff(n), lbar(n), aeff(n), f(n), bw(n);
    for (std::size_t k = 0; k < n; ++k) {
      leff[k] = effective_length(span, fit, k);
      lbar[k] = 1.0 / fit.channels[k].alpha0;
      f[k] = grid[k].center_hz;
      bw[k] = grid[k].bandwidth_hz;
      aeff[k] = span.fiber.aeff_m2.value_at(f[k]);
    }

    constexpr double pi = std::numbers::pi;
    const double gamma_pre = 2.0 * pi / kSpeedOfLight * 2.0 * span.fiber.n2;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (launch[i] == 0.0) continue;
      double b2_ii = std::abs(effective_beta2(span.fiber, f[i], f[i]));
      double gamma_ii = gamma_pre * f[i] / (2.0 * aeff[i]);
      double xs = (pi * pi / 2.0) * b2_ii * lbar[i] * bw[i] * bw[i];
      double eta_spm = (16.0 / 27.0) * gamma_ii * gamma_ii * leff[i] * leff[i] *
                       std::asinh(xs) / (pi * b2_ii * lbar[i] * bw[i] * bw[i]);
      double acc = eta_spm * launch[i] * launch[i] * launch[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || launch[j] == 0.0) continue;
        double b2 = std::abs(effective_beta2(span.fiber, f[i], f[j]));
        double gamma_ij = gamma_pre * f[i] / (aeff[i] + aeff[j]);
        double df = std::abs(f[i] - f[j]);
        double arg = pi * pi * b2 * lbar[j] * bw[j] * df;
        double eta = (32.0 / 27.0) * gamma_ij * gamma_ij * leff[j] * leff[j] *
                     std::asinh(arg) / (2.0 * pi * b2 * lbar[j] * bw[j] * df);
        acc += eta * launch[i] * launch[j] * launch[j];
      }
      out[i] = acc;
    }
    return out;
  }

 private:
  // Simpson integration of exp(-accumulated model loss) over the span.
  static double effective_length(const SpanSpec& span, const FittedLossModel& fit, std::size_t ch) {
    constexpr int kIntervals = 1000;
    const double h = span.length_m / kIntervals;
    const auto& c = fit.channels[ch];
    const double d = std::exp(-c.sigma * h);
    double e = 1.0;
    double sum = 0.0;
    for (int k = 0; k <= kIntervals; ++k) {
      double z = k * h;
      double integrand = std::exp(-(c.alpha0 * z + c.alpha1 / c.sigma * (1.0 - e)));
      double w = (k == 0 || k == kIntervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      sum += w * integrand;
      e *= d;
    }
    return sum * h / 3.0;
  }
};

inline const NliEstimator& default_nli_estimator() {
  static const IncoherentGnNli instance;
  return instance;
}

/// NLI power of one channel under the active estimator.
inline double nli_power(const SpanSpec& span, const FittedLossModel& fit, const ChannelGrid& grid,
                        const LaunchProfile& launch, std::size_t channel,
                        const NliEstimator& estimator = default_nli_estimator()) {
  return estimator.evaluate(span, fit, grid, launch).at(channel);
}

/// Per-span noise breakdown. `target` is the numerator power P of the span
/// GSNR, i.e. the profile the downstream amplifier restores (the next span's
/// launch, the next link's launch, or the span's own launch at the final
/// span). When `received` is null the z = L profile is reconstructed from
/// the fitted loss model.
inline SpanNoiseBreakdown span_gsnr(const SpanSpec& span, const FittedLossModel& fit,
                                    const ChannelGrid& grid, const TransceiverSpec& trx,
                                    const LaunchProfile& launch, const LaunchProfile& target,
                                    const LaunchProfile* received = nullptr,
                                    const NliEstimator& estimator = default_nli_estimator()) {
  const std::size_t n = grid.size();
  if (launch.size() != n || target.size() != n)
    throw std::invalid_argument("span_gsnr: profile/grid size mismatch");

  LaunchProfile recv;
  if (received != nullptr) {
    recv = *received;
  } else {
    recv.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      recv[i] = launch[i] * std::exp(-fit.accumulated_loss(i, span.length_m));
  }

  AmplifierGains gains = amplifier_gains(recv, target, span.lumped_loss_db);
  std::vector<double> nli = estimator.evaluate(span, fit, grid, launch);

  SpanNoiseBreakdown out;
  out.p_ase_w.resize(n);
  out.p_nli_w.resize(n);
  out.gain_db = gains.gain_db;
  out.gsnr_db.resize(n);
  out.osnr_db.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AmplifierSpec& amp = span.amplifier_for(grid[i].band);
    double g_lin = db_to_linear(gains.gain_db[i]);
    out.p_ase_w[i] = ase_power(g_lin, db_to_linear(amp.noise_figure_db), grid[i].center_hz,
                               trx.symbol_rate_baud);
    out.p_nli_w[i] = nli[i];
    double denom_ase = out.p_ase_w[i];
    out.osnr_db[i] = denom_ase > 0.0 ? linear_to_db(target[i] / denom_ase)
                                     : std::numeric_limits<double>::infinity();
    out.gsnr_db[i] = linear_to_db(target[i] / (out.p_ase_w[i] + out.p_nli_w[i]));
  }
  return out;
}

/// End-to-end lightpath GSNR in dB per the incoherent accumulation rule:
/// inverse-GSNR sums over spans plus the transceiver SNR, then the filtering
/// and aging penalties subtract in dB. Returns -infinity when any span is
/// infeasible.
inline double lightpath_gsnr(const std::vector<const SpanNoiseBreakdown*>& spans,
                             std::size_t channel, const PenaltyConfig& penalties,
                             const TransceiverSpec& trx, int roadm_hops) {
  if (spans.empty()) throw std::invalid_argument("lightpath_gsnr: no spans");
  double inv = 1.0 / db_to_linear(trx.snr_trx_db);
  for (const auto* s : spans) {
    double g = db_to_linear(s->gsnr_db[channel]);
    if (!(g > 0.0) || !std::isfinite(g)) return -std::numeric_limits<double>::infinity();
    inv += 1.0 / g;
  }
  double filt = penalties.filtering_per_hop
                    ? static_cast<double>(roadm_hops) * penalties.filtering_db_per_roadm
                    : penalties.filtering_db_per_roadm;
  return linear_to_db(1.0 / inv) - filt - penalties.aging_margin_db;
}

inline double lightpath_gsnr(const std::vector<SpanNoiseBreakdown>& spans, std::size_t channel,
                             const PenaltyConfig& penalties, const TransceiverSpec& trx,
                             int roadm_hops) {
  std::vector<const SpanNoiseBreakdown*> ptrs;
  ptrs.reserve(spans.size());
  for (const auto& s : spans) ptrs.push_back(&s);
  return lightpath_gsnr(ptrs, channel, penalties, trx, roadm_hops);
}

/// Channel bandwidth (slot-quantized) and nominal bit rate for cardinality m.
inline std::pair<double, double> channel_bandwidth_and_rate(const TransceiverSpec& trx,
                                                            double base_slot_hz, int m) {
  if (m < 1 || m > trx.max_cardinality())
    throw std::invalid_argument("channel_bandwidth_and_rate: cardinality out of range");
  double slots = std::ceil(trx.symbol_rate_baud * (1.0 + trx.roll_off) / base_slot_hz);
  return {slots * base_slot_hz, trx.lci_rate_bps(m)};
}

/// Largest cardinality whose GSNR threshold is met; 0 if none is.
inline int modulation_from_gsnr(double gsnr_db, const TransceiverSpec& trx) {
  int m = 0;
  for (std::size_t i = 0; i < trx.modulation_thresholds_db.size(); ++i)
    if (gsnr_db >= trx.modulation_thresholds_db[i]) m = static_cast<int>(i) + 1;
  return m;
}

}  // namespace mbeon
