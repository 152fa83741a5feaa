#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbeon/ccr.hpp"
#include "mbeon/qot.hpp"
#include "mbeon/topology.hpp"

namespace mbeon {

enum class PathPolicy { max_min_gf, min_max_f };
enum class ModPolicy { cbg, wab, wpb };

inline const char* to_string(PathPolicy p) {
  return p == PathPolicy::max_min_gf ? "MaxMinGF" : "MinMaxF";
}
inline const char* to_string(ModPolicy p) {
  return p == ModPolicy::cbg ? "CBG" : p == ModPolicy::wab ? "WAB" : "WPB";
}

/// One deployed line card interface: a transceiver on one channel of one
/// path, carrying m * 100 Gb/s of which `committed_bps` is in use.
struct LciRecord {
  std::size_t id = 0;
  std::size_t pair_idx = 0;
  std::size_t path_idx = 0;
  std::size_t channel = 0;
  int m = 0;
  double capacity_bps = 0.0;
  double committed_bps = 0.0;

  [[nodiscard]] double spare_bps() const { return capacity_bps - committed_bps; }
};

/// Per-link channel occupancy.
struct SpectrumState {
  std::vector<std::vector<std::uint8_t>> occupied;  // [link][channel]

  SpectrumState() = default;
  SpectrumState(std::size_t links, std::size_t channels)
      : occupied(links, std::vector<std::uint8_t>(channels, 0)) {}

  [[nodiscard]] bool is_free(const std::vector<std::size_t>& links, std::size_t ch) const {
    for (std::size_t li : links)
      if (occupied[li][ch]) return false;
    return true;
  }

  void occupy(const std::vector<std::size_t>& links, std::size_t ch) {
    for (std::size_t li : links) occupied[li][ch] = 1;
  }
};

/// Modulation cardinality assigned to a new LCI on `channel` of a path:
/// CBG uses the channel's own cell, WAB the worst cell across the grid,
/// WPB the worst cell within the channel's band.
inline int select_modulation(ModPolicy policy, const CcrTable& ccr, const ChannelGrid& grid,
                             std::size_t pair_idx, std::size_t path_idx, std::size_t channel,
                             const TransceiverSpec& trx) {
  const auto& entry = ccr.pairs[pair_idx];
  switch (policy) {
    case ModPolicy::cbg:
      return entry.cells[path_idx][channel].m;
    case ModPolicy::wab:
      return modulation_from_gsnr(entry.min_gsnr_db[path_idx], trx);
    case ModPolicy::wpb:
      return modulation_from_gsnr(entry.min_gsnr_per_band_db[path_idx].at(grid[channel].band),
                                  trx);
  }
  return 0;
}

struct NewLci {
  std::size_t channel = 0;
  int m = 0;
  double committed_bps = 0.0;
};

struct PlacementPlan {
  std::size_t pair_idx = 0;
  std::size_t path_idx = 0;
  std::vector<NewLci> new_lcis;
  std::vector<std::pair<std::size_t, double>> groomed;  // (lci id, bits taken)
  double min_new_gsnr_db = std::numeric_limits<double>::infinity();
  int max_new_channel = -1;
};

/// Builds the placement plan for one demand on one candidate path: spare
/// capacity of existing LCIs with the same (source, destination, path) is
/// consumed first in ascending channel order, the remainder goes to new
/// LCIs on the lowest free channels whose cardinality is positive under the
/// modulation policy. Returns nothing when residual rate would remain.
inline std::optional<PlacementPlan> groom_and_place(
    const Demand& demand, std::size_t pair_idx, std::size_t path_idx, const CcrTable& ccr,
    const ChannelGrid& grid, const TransceiverSpec& trx, const SpectrumState& spectrum,
    const std::vector<LciRecord>& lci_pool, const std::vector<std::size_t>& pool_on_path,
    ModPolicy policy_mod, bool grooming_enabled) {
  const auto& entry = ccr.pairs[pair_idx];
  const CandidatePath& path = entry.paths[path_idx];

  PlacementPlan plan;
  plan.pair_idx = pair_idx;
  plan.path_idx = path_idx;
  double residual = demand.rate_bps;

  if (grooming_enabled) {
    std::vector<std::size_t> sorted = pool_on_path;
    std::sort(sorted.begin(), sorted.end(), [&](std::size_t x, std::size_t y) {
      return lci_pool[x].channel < lci_pool[y].channel;
    });
    for (std::size_t id : sorted) {
      if (residual <= 0.0) break;
      double spare = lci_pool[id].spare_bps();
      if (spare <= 0.0) continue;
      double take = std::min(spare, residual);
      plan.groomed.emplace_back(id, take);
      residual -= take;
    }
  }

  for (std::size_t ch = 0; residual > 0.0 && ch < grid.size(); ++ch) {
    if (!spectrum.is_free(path.link_idxs, ch)) continue;
    int m = select_modulation(policy_mod, ccr, grid, pair_idx, path_idx, ch, trx);
    if (m <= 0) continue;
    double cap = trx.lci_rate_bps(m);
    plan.new_lcis.push_back({ch, m, std::min(cap, residual)});
    plan.min_new_gsnr_db = std::min(plan.min_new_gsnr_db, entry.cells[path_idx][ch].gsnr_db);
    plan.max_new_channel = std::max(plan.max_new_channel, static_cast<int>(ch));
    residual -= cap;
  }
  if (residual > 0.0) return std::nullopt;
  return plan;
}

/// Evaluates every candidate path of the demand's pair and picks the plan
/// the policy prefers: MaxMinGF maximizes the minimum GSNR among the plan's
/// new LCIs, MinMaxF minimizes the highest channel index used. Ties fall to
/// the shorter path, then the lower path index. Grooming-only plans win
/// under both policies (no new spectrum is at stake).
inline std::optional<PlacementPlan> select_path(
    PathPolicy policy, const Demand& demand, std::size_t pair_idx, const CcrTable& ccr,
    const ChannelGrid& grid, const TransceiverSpec& trx, const SpectrumState& spectrum,
    const std::vector<LciRecord>& lci_pool,
    const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>& pool_index,
    ModPolicy policy_mod, bool grooming_enabled) {
  const auto& entry = ccr.pairs[pair_idx];
  std::optional<PlacementPlan> best;
  std::tuple<double, double, std::size_t> best_key{};
  static const std::vector<std::size_t> kEmpty;
  for (std::size_t pi = 0; pi < entry.paths.size(); ++pi) {
    auto it = pool_index.find({pair_idx, pi});
    const std::vector<std::size_t>& on_path = it == pool_index.end() ? kEmpty : it->second;
    auto plan = groom_and_place(demand, pair_idx, pi, ccr, grid, trx, spectrum, lci_pool,
                                on_path, policy_mod, grooming_enabled);
    if (!plan) continue;
    double score = policy == PathPolicy::max_min_gf
                       ? -plan->min_new_gsnr_db
                       : static_cast<double>(plan->max_new_channel);
    std::tuple<double, double, std::size_t> key{score, entry.paths[pi].total_length_km, pi};
    if (!best || key < best_key) {
      best = std::move(plan);
      best_key = key;
    }
  }
  return best;
}

struct SimOptions {
  PathPolicy path_policy = PathPolicy::min_max_f;
  ModPolicy mod_policy = ModPolicy::cbg;
  bool grooming = true;
  std::size_t checkpoint_interval = 25;
};

struct SimCheckpoint {
  std::size_t demands = 0;
  double offered_bps = 0.0;
  double placed_bps = 0.0;
  double blocked_bps = 0.0;
  double bbp = 0.0;
  std::size_t lci_count = 0;
  double mean_lci_gsnr_db = 0.0;
};

struct SimEvent {
  std::size_t demand_id = 0;
  bool placed = false;
  std::size_t path_idx = 0;
  std::vector<std::size_t> channels;  // new LCIs only
  std::vector<int> m_values;
};

struct SimMetrics {
  double offered_bps = 0.0;
  double placed_bps = 0.0;
  double blocked_bps = 0.0;
  double bbp = 0.0;
  std::size_t lci_count = 0;
  double mean_lci_gsnr_db = 0.0;
  std::vector<std::size_t> cardinality_usage;  // index m = 0..6
  double throughput_at_1pct_bps = 0.0;         // largest offered load with BBP <= 1%
};

struct SimResult {
  SimMetrics metrics;
  std::vector<SimCheckpoint> checkpoints;
  std::vector<SimEvent> events;
  std::vector<LciRecord> lcis;
  SpectrumState spectrum;

  /// Rebuilds occupancy from the LCI records and cross-checks the live
  /// spectrum state: every LCI channel occupied on every link of its path,
  /// no channel double-booked, nothing occupied without an owner.
  [[nodiscard]] bool audit(const Topology& topo, const CcrTable& ccr) const {
    SpectrumState rebuilt(topo.links.size(), spectrum.occupied.empty() ? 0 : spectrum.occupied[0].size());
    for (const auto& lci : lcis) {
      const CandidatePath& path = ccr.pairs[lci.pair_idx].paths[lci.path_idx];
      for (std::size_t li : path.link_idxs) {
        if (rebuilt.occupied[li][lci.channel]) return false;  // double booking
        rebuilt.occupied[li][lci.channel] = 1;
      }
    }
    return rebuilt.occupied == spectrum.occupied;
  }
};

/// Semi-static admission: demands arrive in sequence and never depart; a
/// demand that cannot be hosted on any candidate path blocks in full.
inline SimResult run_simulation(const Topology& topo, const CcrTable& ccr,
                                const ChannelGrid& grid, const TransceiverSpec& trx,
                                const std::vector<Demand>& demands, const SimOptions& opts) {
  SimResult res;
  res.spectrum = SpectrumState(topo.links.size(), grid.size());
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> pool_index;

  double offered = 0.0, placed = 0.0, blocked = 0.0;
  double gsnr_sum = 0.0;
  std::vector<std::size_t> usage(trx.max_cardinality() + 1, 0);

  auto checkpoint = [&](std::size_t count) {
    SimCheckpoint cp;
    cp.demands = count;
    cp.offered_bps = offered;
    cp.placed_bps = placed;
    cp.blocked_bps = blocked;
    cp.bbp = offered > 0.0 ? blocked / offered : 0.0;
    cp.lci_count = res.lcis.size();
    cp.mean_lci_gsnr_db = res.lcis.empty() ? 0.0 : gsnr_sum / static_cast<double>(res.lcis.size());
    res.checkpoints.push_back(cp);
  };

  for (std::size_t di = 0; di < demands.size(); ++di) {
    const Demand& demand = demands[di];
    std::size_t pair_idx = ccr.pair_index(demand.src, demand.dst);
    offered += demand.rate_bps;

    auto plan = select_path(opts.path_policy, demand, pair_idx, ccr, grid, trx, res.spectrum,
                            res.lcis, pool_index, opts.mod_policy, opts.grooming);
    SimEvent ev;
    ev.demand_id = demand.id;
    if (!plan) {
      blocked += demand.rate_bps;
    } else {
      placed += demand.rate_bps;
      ev.placed = true;
      ev.path_idx = plan->path_idx;
      for (auto [id, take] : plan->groomed) res.lcis[id].committed_bps += take;
      const CandidatePath& path = ccr.pairs[pair_idx].paths[plan->path_idx];
      for (const NewLci& nl : plan->new_lcis) {
        LciRecord rec;
        rec.id = res.lcis.size();
        rec.pair_idx = pair_idx;
        rec.path_idx = plan->path_idx;
        rec.channel = nl.channel;
        rec.m = nl.m;
        rec.capacity_bps = trx.lci_rate_bps(nl.m);
        rec.committed_bps = nl.committed_bps;
        res.spectrum.occupy(path.link_idxs, nl.channel);
        pool_index[{pair_idx, plan->path_idx}].push_back(rec.id);
        gsnr_sum += ccr.pairs[pair_idx].cells[plan->path_idx][nl.channel].gsnr_db;
        ++usage[static_cast<std::size_t>(nl.m)];
        ev.channels.push_back(nl.channel);
        ev.m_values.push_back(nl.m);
        res.lcis.push_back(rec);
      }
    }
    res.events.push_back(std::move(ev));
    if (offered > 0.0 && blocked / offered <= 0.01)
      res.metrics.throughput_at_1pct_bps = offered;
    if (opts.checkpoint_interval > 0 && (di + 1) % opts.checkpoint_interval == 0)
      checkpoint(di + 1);
  }
  if (res.checkpoints.empty() || res.checkpoints.back().demands != demands.size())
    checkpoint(demands.size());

  res.metrics.offered_bps = offered;
  res.metrics.placed_bps = placed;
  res.metrics.blocked_bps = blocked;
  res.metrics.bbp = offered > 0.0 ? blocked / offered : 0.0;
  res.metrics.lci_count = res.lcis.size();
  res.metrics.mean_lci_gsnr_db =
      res.lcis.empty() ? 0.0 : gsnr_sum / static_cast<double>(res.lcis.size());
  res.metrics.cardinality_usage = usage;
  return res;
}

}  // namespace mbeon
