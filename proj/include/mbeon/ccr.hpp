#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mbeon/defaults.hpp"
#include "mbeon/hpo.hpp"
#include "mbeon/loss_fit.hpp"
#include "mbeon/pep.hpp"
#include "mbeon/qot.hpp"
#include "mbeon/topology.hpp"

namespace mbeon {

struct CcrCell {
  double gsnr_db = 0.0;
  int m = 0;              // 0 means unusable
  double rate_bps = 0.0;  // m * 100 Gb/s
};

/// Wavelength-dependent capacity table for every core pair, candidate path
/// and channel, computed under the full-load assumption (idle channels carry
/// ASE-shaped filler, so cells never depend on occupancy).
struct CcrTable {
  struct PairEntry {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::vector<CandidatePath> paths;
    std::vector<std::vector<CcrCell>> cells;        // [path][channel]
    std::vector<double> min_gsnr_db;                // per path, across the grid
    std::vector<std::map<std::string, double>> min_gsnr_per_band_db;  // per path
  };
  std::vector<PairEntry> pairs;

  [[nodiscard]] std::size_t pair_index(std::size_t src, std::size_t dst) const {
    auto [lo, hi] = std::minmax(src, dst);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (pairs[i].src == lo && pairs[i].dst == hi) return i;
    throw std::invalid_argument("CcrTable: unknown pair");
  }
};

/// Per-link launch profiles, aligned with Topology::links.
using LinkLaunches = std::vector<LaunchProfile>;

/// Uniform flat launch on every link (the GON configuration).
inline LinkLaunches uniform_launches(const Topology& topo, const ChannelGrid& grid,
                                     double power_dbm) {
  LinkLaunches out(topo.links.size(), LaunchProfile(grid.size(), dbm_to_watt(power_dbm)));
  return out;
}

namespace detail {

// Per-link solve + fit, shared by every span of that link (all spans carry
// the same launch profile; the DGE re-establishes it after each amplifier).
struct LinkPhysics {
  PowerEvolutionProfile pep;
  FittedLossModel fit;
  SpanSpec span_template;
};

inline LinkPhysics link_physics(const Topology& topo, std::size_t link_idx,
                                const FiberSpec& fiber, const ChannelGrid& grid,
                                const LaunchProfile& launch, double pep_step_m) {
  const LinkSpec& link = topo.links[link_idx];
  LinkPhysics out;
  out.span_template.length_m = link.average_span_km() * 1000.0;
  out.span_template.fiber = fiber;
  out.span_template.amplifiers = link.amplifiers;
  out.pep = solve_pep(launch, out.span_template, grid, Direction::forward, pep_step_m);
  out.fit = fit_loss_model(out.pep, grid);
  return out;
}

}  // namespace detail

/// Chains span noise breakdowns along every candidate path and maps the
/// end-to-end GSNR of each channel to a modulation cardinality. The span
/// GSNR numerator follows the power reference cases: the next span's launch
/// inside a link, the next link's launch at a boundary, the span's own
/// launch at the final span of the path.
inline CcrTable precompute_ccr(const Topology& topo, const ChannelGrid& grid,
                               const TransceiverSpec& trx, const PenaltyConfig& penalties,
                               const FiberSpec& fiber, const LinkLaunches& launches,
                               std::size_t k, double pep_step_m = 50.0) {
  if (launches.size() != topo.links.size())
    throw std::invalid_argument("precompute_ccr: one launch profile per link required");

  std::vector<detail::LinkPhysics> phys;
  phys.reserve(topo.links.size());
  for (std::size_t li = 0; li < topo.links.size(); ++li)
    phys.push_back(detail::link_physics(topo, li, fiber, grid, launches[li], pep_step_m));

  // span breakdowns keyed by (link, span index, target link or self)
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, SpanNoiseBreakdown> cache;
  auto breakdown_for = [&](std::size_t li, std::size_t si, std::size_t target_li) {
    auto key = std::make_tuple(li, si, target_li);
    auto it = cache.find(key);
    if (it != cache.end()) return &it->second;
    SpanSpec span = phys[li].span_template;
    span.lumped_loss_db = topo.links[li].spans[si].lumped_loss_db;
    LaunchProfile recv = phys[li].pep.received();
    const LaunchProfile& target = launches[target_li];
    SpanNoiseBreakdown b =
        span_gsnr(span, phys[li].fit, grid, trx, launches[li], target, &recv);
    return &cache.emplace(key, std::move(b)).first->second;
  };

  CcrTable table;
  auto core = topo.core_nodes();
  for (std::size_t i = 0; i < core.size(); ++i) {
    for (std::size_t j = i + 1; j < core.size(); ++j) {
      CcrTable::PairEntry entry;
      entry.src = core[i];
      entry.dst = core[j];
      entry.paths = k_shortest_paths(topo, core[i], core[j], k);
      for (const CandidatePath& path : entry.paths) {
        std::vector<const SpanNoiseBreakdown*> chain;
        for (std::size_t pl = 0; pl < path.link_idxs.size(); ++pl) {
          std::size_t li = path.link_idxs[pl];
          std::size_t nspans = topo.links[li].spans.size();
          for (std::size_t si = 0; si < nspans; ++si) {
            bool last_of_link = si + 1 == nspans;
            bool last_of_path = last_of_link && pl + 1 == path.link_idxs.size();
            std::size_t target_li = last_of_path ? li
                                  : last_of_link ? path.link_idxs[pl + 1]
                                                 : li;
            chain.push_back(breakdown_for(li, si, target_li));
          }
        }
        std::vector<CcrCell> cells(grid.size());
        double min_gsnr = std::numeric_limits<double>::infinity();
        std::map<std::string, double> min_band;
        for (std::size_t ch = 0; ch < grid.size(); ++ch) {
          double gsnr_db = lightpath_gsnr(chain, ch, penalties, trx, path.roadm_hops);
          CcrCell cell;
          cell.gsnr_db = gsnr_db;
          cell.m = modulation_from_gsnr(gsnr_db, trx);
          cell.rate_bps = trx.lci_rate_bps(cell.m);
          cells[ch] = cell;
          min_gsnr = std::min(min_gsnr, gsnr_db);
          auto [it, inserted] = min_band.try_emplace(grid[ch].band, gsnr_db);
          if (!inserted) it->second = std::min(it->second, gsnr_db);
        }
        entry.cells.push_back(std::move(cells));
        entry.min_gsnr_db.push_back(min_gsnr);
        entry.min_gsnr_per_band_db.push_back(std::move(min_band));
      }
      table.pairs.push_back(std::move(entry));
    }
  }
  return table;
}

}  // namespace mbeon
