#pragma once

#include <cmath>
#include <cstddef>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mbeon/band_plan.hpp"
#include "mbeon/loss_fit.hpp"
#include "mbeon/pep.hpp"
#include "mbeon/qot.hpp"
#include "mbeon/span.hpp"
#include "mbeon/units.hpp"

namespace mbeon {

enum class HPOMode { flp, frp };

struct HPOConfig {
  double p_max_dbm = 6.0;   // per-channel launch cap (constraint C1)
  double step_db = 0.1;     // scan granularity
  HPOMode mode = HPOMode::flp;
  bool per_band_frp = false;  // flat received power per band instead of one value
  double pep_step_m = 50.0;
  // FRP needs the optimal FLP as its scan anchor; when unset it is computed
  // internally, which doubles the work for callers that already have it.
  std::optional<double> frp_anchor_dbm;
};

struct ProfileStats {
  double mean = 0.0;
  double std_dev = 0.0;
  double max_minus_min = 0.0;
};

inline ProfileStats profile_stats(const std::vector<double>& v) {
  ProfileStats s;
  if (v.empty()) return s;
  double lo = v.front(), hi = v.front(), sum = 0.0;
  for (double x : v) {
    sum += x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  s.mean = sum / static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - s.mean) * (x - s.mean);
  s.std_dev = std::sqrt(acc / static_cast<double>(v.size()));
  s.max_minus_min = hi - lo;
  return s;
}

struct BandStatsSet {
  ProfileStats overall;
  std::map<std::string, ProfileStats> per_band;
};

inline BandStatsSet band_stats(const std::vector<double>& v, const ChannelGrid& grid) {
  BandStatsSet out;
  out.overall = profile_stats(v);
  std::map<std::string, std::vector<double>> split;
  for (std::size_t i = 0; i < grid.size(); ++i) split[grid[i].band].push_back(v[i]);
  for (auto& [band, vals] : split) out.per_band[band] = profile_stats(vals);
  return out;
}

struct ScanPoint {
  double candidate_dbm = 0.0;
  double tc_bps = 0.0;
};

struct HPOResult {
  HPOMode mode = HPOMode::flp;
  double optimal_flat_power_dbm = 0.0;  // launch power (FLP) or received power (FRP)
  double total_capacity_bps = 0.0;
  LaunchProfile launch_w;
  LaunchProfile received_w;
  std::vector<double> gsnr_db;
  std::vector<double> osnr_db;
  std::vector<ScanPoint> scan;
  BandStatsSet launch_dbm_stats, received_dbm_stats, gsnr_stats, osnr_stats;
};

/// Total span capacity  TC = 2 sum_i R_s log2(1 + GSNR_i)  (factor 2 is
/// polarization).
inline double span_total_capacity(const SpanNoiseBreakdown& breakdown, const ChannelGrid& grid,
                                  const TransceiverSpec& trx) {
  (void)grid;
  double sum = 0.0;
  for (double g_db : breakdown.gsnr_db) sum += std::log2(1.0 + db_to_linear(g_db));
  return 2.0 * trx.symbol_rate_baud * sum;
}

namespace detail {

// Flattened single-band surrogate used for the LOGO reference power: the
// probe channel's parameters applied to every channel of its band, no ISRS.
struct LogoSurrogate {
  double eta_total = 0.0;  // P_NLI = eta_total * P^3 at uniform power P
  double p_ase_w = 0.0;

  LogoSurrogate(const SpanSpec& span, const ChannelGrid& grid, const TransceiverSpec& trx) {
    std::string probe_band = "C";
    std::vector<std::size_t> members = grid.band_indices(probe_band);
    if (members.empty()) {
      probe_band = grid[grid.size() / 2].band;
      members = grid.band_indices(probe_band);
    }
    const std::size_t probe = members[members.size() / 2];
    const double f = grid[probe].center_hz;
    const double bw = grid[probe].bandwidth_hz;
    const double alpha = span.fiber.attenuation_per_m(f);
    const double leff = (1.0 - std::exp(-alpha * span.length_m)) / alpha;
    const double lbar = 1.0 / alpha;
    const double b2 = std::abs(effective_beta2(span.fiber, f, f));
    const double gamma = pair_gamma(span.fiber, f, f);
    constexpr double pi = 3.14159265358979323846;

    double xs = (pi * pi / 2.0) * b2 * lbar * bw * bw;
    eta_total = (16.0 / 27.0) * gamma * gamma * leff * leff * std::asinh(xs) /
                (pi * b2 * lbar * bw * bw);
    for (std::size_t j : members) {
      if (j == probe) continue;
      double df = std::abs(grid[j].center_hz - f);
      double arg = pi * pi * b2 * lbar * bw * df;
      eta_total += (32.0 / 27.0) * gamma * gamma * leff * leff * std::asinh(arg) /
                   (2.0 * pi * b2 * lbar * bw * df);
    }

    const AmplifierSpec& amp = span.amplifier_for(probe_band);
    double gain_db = linear_to_db(std::exp(alpha * span.length_m)) + span.lumped_loss_db;
    p_ase_w = ase_power(db_to_linear(gain_db), db_to_linear(amp.noise_figure_db), f,
                        trx.symbol_rate_baud);
  }
};

}  // namespace detail

/// Reference flat power for the LOGO strategy: the power at which the probe
/// channel's NLI equals half its ASE under a frequency-independent
/// single-band approximation of the span. Falls back to 0 dBm when the
/// bracket fails.
inline double logo_reference_power(const SpanSpec& span, const ChannelGrid& grid,
                                   const TransceiverSpec& trx) {
  detail::LogoSurrogate s(span, grid, trx);
  auto excess = [&](double p_dbm) {
    double p = dbm_to_watt(p_dbm);
    return s.eta_total * p * p * p - s.p_ase_w / 2.0;
  };
  double lo = -40.0, hi = 20.0;
  if (!(excess(lo) < 0.0 && excess(hi) > 0.0)) {
    std::cerr << "logo_reference_power: bracketing failed, falling back to 0 dBm\n";
    return 0.0;
  }
  for (int it = 0; it < 100 && hi - lo > 1e-6; ++it) {
    double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace detail {

struct CandidateOutcome {
  double tc = 0.0;
  PowerEvolutionProfile pep;
  SpanNoiseBreakdown breakdown;
  bool over_cap = false;
};

inline CandidateOutcome evaluate_candidate(const SpanSpec& span, const ChannelGrid& grid,
                                           const TransceiverSpec& trx, const HPOConfig& cfg,
                                           const IsrsSystem& sys, double candidate_dbm) {
  CandidateOutcome out;
  const std::size_t n = grid.size();
  LaunchProfile boundary(n);
  if (cfg.mode == HPOMode::flp) {
    double p = dbm_to_watt(candidate_dbm);
    for (auto& v : boundary) v = p;
    if (candidate_dbm > cfg.p_max_dbm) {
      out.over_cap = true;
      return out;
    }
  } else {
    // flat received target; per-band variant offsets each band by its noise
    // figure relative to the C-band amplifier
    double nf_ref = span.amplifiers.count("C") ? span.amplifier_for("C").noise_figure_db
                                               : span.amplifiers.begin()->second.noise_figure_db;
    for (std::size_t i = 0; i < n; ++i) {
      double offset =
          cfg.per_band_frp ? span.amplifier_for(grid[i].band).noise_figure_db - nf_ref : 0.0;
      boundary[i] = dbm_to_watt(candidate_dbm + offset);
    }
  }

  Direction dir = cfg.mode == HPOMode::flp ? Direction::forward : Direction::backward;
  out.pep = integrate(sys, boundary, span.length_m, cfg.pep_step_m, dir);
  LaunchProfile launch = out.pep.launch();
  double p_cap = dbm_to_watt(cfg.p_max_dbm);
  for (double v : launch)
    if (v > p_cap) {
      out.over_cap = true;
      return out;
    }
  FittedLossModel fit = fit_loss_model(out.pep, grid);
  LaunchProfile recv = out.pep.received();
  out.breakdown = span_gsnr(span, fit, grid, trx, launch, launch, &recv);
  out.tc = span_total_capacity(out.breakdown, grid, trx);
  return out;
}

}  // namespace detail

/// Algorithm: scan flat-power candidates upward in fixed steps from the
/// LOGO-derived start, keep the incumbent, and stop on the first capacity
/// decrease or on a launch-cap violation.
inline HPOResult optimize_span_power(const SpanSpec& span, const ChannelGrid& grid,
                                     const TransceiverSpec& trx, const HPOConfig& cfg) {
  if (cfg.step_db <= 0.0) throw std::invalid_argument("optimize_span_power: step must be > 0");
  span.validate();

  double p_start, p_end;
  if (cfg.mode == HPOMode::flp) {
    p_start = logo_reference_power(span, grid, trx);
    p_end = p_start + 3.0;
  } else {
    double anchor;
    if (cfg.frp_anchor_dbm) {
      anchor = *cfg.frp_anchor_dbm;
    } else {
      HPOConfig flp_cfg = cfg;
      flp_cfg.mode = HPOMode::flp;
      anchor = optimize_span_power(span, grid, trx, flp_cfg).optimal_flat_power_dbm;
    }
    double alpha_max_db_km = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      alpha_max_db_km =
          std::max(alpha_max_db_km, span.fiber.loss_db_per_km.value_at(grid[i].center_hz));
    p_start = anchor - alpha_max_db_km * span.length_m / 1000.0;
    p_end = 0.0;
  }

  detail::IsrsSystem sys(span, grid);
  HPOResult best;
  best.mode = cfg.mode;
  bool have_incumbent = false;
  for (std::size_t k = 0;; ++k) {
    double cand = p_start + static_cast<double>(k) * cfg.step_db;
    if (cand > p_end + 1e-9) break;
    detail::CandidateOutcome oc = detail::evaluate_candidate(span, grid, trx, cfg, sys, cand);
    if (oc.over_cap) break;
    best.scan.push_back({cand, oc.tc});
    if (oc.tc > best.total_capacity_bps) {
      best.total_capacity_bps = oc.tc;
      best.optimal_flat_power_dbm = cand;
      best.launch_w = oc.pep.launch();
      best.received_w = oc.pep.received();
      best.gsnr_db = oc.breakdown.gsnr_db;
      best.osnr_db = oc.breakdown.osnr_db;
      have_incumbent = true;
    } else {
      break;
    }
  }
  if (!have_incumbent)
    throw std::runtime_error("optimize_span_power: empty scan range (no feasible candidate)");

  std::vector<double> launch_dbm(best.launch_w.size()), recv_dbm(best.received_w.size());
  for (std::size_t i = 0; i < best.launch_w.size(); ++i) launch_dbm[i] = watt_to_dbm(best.launch_w[i]);
  for (std::size_t i = 0; i < best.received_w.size(); ++i) recv_dbm[i] = watt_to_dbm(best.received_w[i]);
  best.launch_dbm_stats = band_stats(launch_dbm, grid);
  best.received_dbm_stats = band_stats(recv_dbm, grid);
  best.gsnr_stats = band_stats(best.gsnr_db, grid);
  best.osnr_stats = band_stats(best.osnr_db, grid);
  return best;
}

}  // namespace mbeon
