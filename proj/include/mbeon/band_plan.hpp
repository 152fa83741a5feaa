#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbeon {

/// One transmission band. Bands are listed low-to-high frequency in a plan.
struct Band {
  std::string name;      // "L", "C" or "S"
  double width_hz = 0.0;
};

/// Frequency plan for a multi-band system. The plan is anchored at the lower
/// edge of the lowest band; bands follow in order separated by a fixed gap.
struct BandPlan {
  std::vector<Band> bands;
  double start_hz = 184.4e12;       // lower edge of the first (lowest) band
  double inter_band_gap_hz = 400e9;
  double channel_spacing_hz = 75e9;
  double base_slot_hz = 12.5e9;     // B_Base

  void validate() const {
    if (bands.empty()) throw std::invalid_argument("BandPlan: no bands");
    for (const auto& b : bands)
      if (b.width_hz <= 0.0) throw std::invalid_argument("BandPlan: band width must be > 0 (" + b.name + ")");
    if (channel_spacing_hz <= 0.0 || base_slot_hz <= 0.0)
      throw std::invalid_argument("BandPlan: spacing and base slot must be > 0");
    double ratio = channel_spacing_hz / base_slot_hz;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
      throw std::invalid_argument("BandPlan: channel spacing must be an integer multiple of the base slot");
  }
};

struct Channel {
  std::size_t index = 0;
  double center_hz = 0.0;
  std::string band;
  double bandwidth_hz = 0.0;  // B_ch
};

struct ChannelGrid {
  std::vector<Channel> channels;

  [[nodiscard]] std::size_t size() const { return channels.size(); }
  [[nodiscard]] const Channel& operator[](std::size_t i) const { return channels[i]; }

  [[nodiscard]] std::vector<double> frequencies() const {
    std::vector<double> f;
    f.reserve(channels.size());
    for (const auto& c : channels) f.push_back(c.center_hz);
    return f;
  }

  [[nodiscard]] double min_frequency() const { return channels.front().center_hz; }
  [[nodiscard]] double max_frequency() const { return channels.back().center_hz; }

  /// Indices of the channels belonging to one band, in grid order.
  [[nodiscard]] std::vector<std::size_t> band_indices(const std::string& band) const {
    std::vector<std::size_t> out;
    for (const auto& c : channels)
      if (c.band == band) out.push_back(c.index);
    return out;
  }
};

/// Lays out floor(width / spacing) channels per band, centered within the
/// band, lowest frequency first. A band too narrow for a single channel is
/// rejected.
inline ChannelGrid build_channel_grid(const BandPlan& plan) {
  plan.validate();
  ChannelGrid grid;
  double band_lo = plan.start_hz;
  for (std::size_t b = 0; b < plan.bands.size(); ++b) {
    const Band& band = plan.bands[b];
    auto n = static_cast<std::size_t>(std::floor(band.width_hz / plan.channel_spacing_hz));
    if (n == 0)
      throw std::invalid_argument("build_channel_grid: band " + band.name + " narrower than one channel (" +
                               std::to_string(band.width_hz * 1e-9) + " GHz < " +
                               std::to_string(plan.channel_spacing_hz * 1e-9) + " GHz)");
    double leftover = band.width_hz - static_cast<double>(n) * plan.channel_spacing_hz;
    double first = band_lo + leftover / 2.0 + plan.channel_spacing_hz / 2.0;
    for (std::size_t k = 0; k < n; ++k) {
      Channel ch;
      ch.index = grid.channels.size();
      ch.center_hz = first + static_cast<double>(k) * plan.channel_spacing_hz;
      ch.band = band.name;
      ch.bandwidth_hz = plan.channel_spacing_hz;
      grid.channels.push_back(ch);
    }
    band_lo += band.width_hz + plan.inter_band_gap_hz;
  }
  return grid;
}

}  // namespace mbeon
