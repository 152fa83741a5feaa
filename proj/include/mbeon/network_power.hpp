#pragma once

#include <cstddef>
#include <cstdint>
#include <future>
#include <thread>
#include <vector>

#include "mbeon/ccr.hpp"
#include "mbeon/hpo.hpp"
#include "mbeon/provisioning.hpp"
#include "mbeon/topology.hpp"

namespace mbeon {

namespace detail {

/// Runs fn(i) for i in [0, n) across a bounded pool; results keep index
/// order, so the output is identical to a sequential run.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  std::vector<T> out(n);
  std::vector<std::future<void>> futs;
  for (std::size_t w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&, w]() {
      for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
    }));
  }
  for (auto& f : futs) f.get();
  return out;
}

}  // namespace detail

/// Builds the representative span of a link: the link's average span length
/// and average lumped loss with its own amplifier set. Per-span
/// heterogeneity inside a link is intentionally collapsed here.
inline SpanSpec representative_span(const Topology& topo, std::size_t link_idx,
                                    const FiberSpec& fiber) {
  const LinkSpec& link = topo.links[link_idx];
  SpanSpec span;
  span.length_m = link.average_span_km() * 1000.0;
  span.fiber = fiber;
  span.amplifiers = link.amplifiers;
  span.lumped_loss_db = link.average_lumped_db();
  return span;
}

/// Per-link power optimization: each link gets the HPO result of its
/// representative span, applied to all of its spans (the LOGON strategy).
/// Links are independent, so they run in parallel.
inline std::vector<HPOResult> optimize_network_powers(const Topology& topo,
                                                      const ChannelGrid& grid,
                                                      const TransceiverSpec& trx,
                                                      const HPOConfig& cfg,
                                                      const FiberSpec& fiber) {
  return detail::parallel_map<HPOResult>(topo.links.size(), [&](std::size_t li) {
    return optimize_span_power(representative_span(topo, li, fiber), grid, trx, cfg);
  });
}

inline LinkLaunches launches_from_results(const std::vector<HPOResult>& results) {
  LinkLaunches out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(r.launch_w);
  return out;
}

struct CampaignSetup {
  std::size_t k = 3;
  std::uint64_t base_seed = 1;
  std::size_t iterations = 20;
  std::size_t demand_count = 1000;
  SimOptions sim;
};

struct CampaignCheckpoint {
  std::size_t demands = 0;
  double load_gbps_mean = 0.0;
  double bbp_mean = 0.0;
  double bbp_std = 0.0;
  double lci_count_mean = 0.0;
  double gsnr_mean_db = 0.0;
};

/// Aggregate over the per-seed runs. Iteration i uses seed base_seed + i.
struct CampaignResult {
  std::vector<SimMetrics> per_seed;
  std::vector<CampaignCheckpoint> checkpoints;
  double throughput_at_1pct_mean_bps = 0.0;
  double final_bbp_mean = 0.0;
  double lci_count_mean = 0.0;
  double gsnr_mean_db = 0.0;
};

inline CampaignResult run_campaign(const Topology& topo, const CcrTable& ccr,
                                   const ChannelGrid& grid, const TransceiverSpec& trx,
                                   const CampaignSetup& setup) {
  auto runs = detail::parallel_map<SimResult>(setup.iterations, [&](std::size_t i) {
    auto demands = generate_demand_sequence(topo, setup.base_seed + i, setup.demand_count);
    return run_simulation(topo, ccr, grid, trx, demands, setup.sim);
  });

  CampaignResult out;
  for (const auto& r : runs) out.per_seed.push_back(r.metrics);

  std::size_t ncp = runs.empty() ? 0 : runs.front().checkpoints.size();
  for (std::size_t c = 0; c < ncp; ++c) {
    CampaignCheckpoint cp;
    cp.demands = runs.front().checkpoints[c].demands;
    double n = static_cast<double>(runs.size());
    for (const auto& r : runs) {
      cp.load_gbps_mean += r.checkpoints[c].offered_bps / 1e9 / n;
      cp.bbp_mean += r.checkpoints[c].bbp / n;
      cp.lci_count_mean += static_cast<double>(r.checkpoints[c].lci_count) / n;
      cp.gsnr_mean_db += r.checkpoints[c].mean_lci_gsnr_db / n;
    }
    for (const auto& r : runs)
      cp.bbp_std += (r.checkpoints[c].bbp - cp.bbp_mean) * (r.checkpoints[c].bbp - cp.bbp_mean) / n;
    cp.bbp_std = std::sqrt(cp.bbp_std);
    out.checkpoints.push_back(cp);
  }

  double n = static_cast<double>(runs.size());
  for (const auto& m : out.per_seed) {
    out.throughput_at_1pct_mean_bps += m.throughput_at_1pct_bps / n;
    out.final_bbp_mean += m.bbp / n;
    out.lci_count_mean += static_cast<double>(m.lci_count) / n;
    out.gsnr_mean_db += m.mean_lci_gsnr_db / n;
  }
  return out;
}

struct GonRow {
  double power_dbm = 0.0;
  CampaignResult campaign;
};

/// The GON study: one uniform flat launch power across every span of the
/// network, evaluated per candidate power through the full CCR + blocking
/// pipeline. An empty topology yields an empty table.
inline std::vector<GonRow> gon_sweep(const Topology& topo, const ChannelGrid& grid,
                                     const TransceiverSpec& trx, const PenaltyConfig& penalties,
                                     const FiberSpec& fiber, const std::vector<double>& powers_dbm,
                                     const CampaignSetup& setup, double pep_step_m = 50.0) {
  if (powers_dbm.empty()) throw std::invalid_argument("gon_sweep: no powers to sweep");
  std::vector<GonRow> rows;
  if (topo.links.empty() || topo.core_nodes().size() < 2) return rows;
  for (double p : powers_dbm) {
    CcrTable ccr = precompute_ccr(topo, grid, trx, penalties, fiber,
                                  uniform_launches(topo, grid, p), setup.k, pep_step_m);
    GonRow row;
    row.power_dbm = p;
    row.campaign = run_campaign(topo, ccr, grid, trx, setup);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mbeon
