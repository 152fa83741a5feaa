#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbeon/band_plan.hpp"
#include "mbeon/span.hpp"

namespace mbeon {

/// Per-channel optical power in W, aligned with ChannelGrid indices.
using LaunchProfile = std::vector<double>;

enum class Direction { forward, backward };

/// Power of every channel sampled along one span. Rows are z samples in
/// ascending order; the first row is the launch profile.
struct PowerEvolutionProfile {
  std::vector<double> z_m;        // ascending, z = 0 .. span length
  std::vector<double> power_w;    // row-major [z_index * channels + channel]
  std::size_t channels = 0;

  [[nodiscard]] std::size_t samples() const { return z_m.size(); }
  [[nodiscard]] double at(std::size_t z_index, std::size_t channel) const {
    return power_w[z_index * channels + channel];
  }
  [[nodiscard]] const double* row(std::size_t z_index) const {
    return power_w.data() + z_index * channels;
  }
  [[nodiscard]] LaunchProfile launch() const {
    return LaunchProfile(row(0), row(0) + channels);
  }
  [[nodiscard]] LaunchProfile received() const {
    return LaunchProfile(row(samples() - 1), row(samples() - 1) + channels);
  }
};

/// Extracts the z = L column of a profile.
inline LaunchProfile received_profile(const PowerEvolutionProfile& pep) {
  if (pep.samples() == 0 || pep.channels == 0)
    throw std::invalid_argument("received_profile: empty profile");
  return pep.received();
}

namespace detail {

// Precomputed right-hand side of the coupled ISRS system:
//   dP_i/dz = P_i [ sum_j zeta(f_i/f_j) C_r(f_j, f_j - f_i) P_j - alpha(f_i) ]
// The Raman coupling matrix is constant along z, so each evaluation is one
// matrix-vector product.
struct IsrsSystem {
  std::vector<double> alpha;   // 1/m per channel
  std::vector<double> gain;    // row-major [i * n + j]
  std::size_t n = 0;

  IsrsSystem(const SpanSpec& span, const ChannelGrid& grid) {
    n = grid.size();
    alpha.resize(n);
    gain.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double fi = grid[i].center_hz;
      alpha[i] = span.fiber.attenuation_per_m(fi);
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        double fj = grid[j].center_hz;
        double zeta = fi > fj ? fi / fj : 1.0;
        gain[i * n + j] = zeta * raman_gain(span.fiber.raman, fj, fj - fi);
      }
    }
  }

  void rhs(const double* p, double* out) const {
    for (std::size_t i = 0; i < n; ++i) {
      const double* g = gain.data() + i * n;
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += g[j] * p[j];
      out[i] = p[i] * (s - alpha[i]);
    }
  }
};

inline PowerEvolutionProfile integrate(const IsrsSystem& sys, const LaunchProfile& boundary,
                                       double length_m, double step_m, Direction direction) {
  const std::size_t n = sys.n;
  auto nsteps = static_cast<std::size_t>(std::ceil(length_m / step_m - 1e-9));
  if (nsteps == 0) nsteps = 1;
  const double h0 = length_m / static_cast<double>(nsteps);
  const double h = direction == Direction::forward ? h0 : -h0;

  PowerEvolutionProfile pep;
  pep.channels = n;
  pep.z_m.resize(nsteps + 1);
  for (std::size_t k = 0; k <= nsteps; ++k) pep.z_m[k] = static_cast<double>(k) * h0;
  pep.z_m[nsteps] = length_m;
  pep.power_w.resize((nsteps + 1) * n);

  std::vector<double> p(boundary), tmp(n), k1(n), k2(n), k3(n), k4(n);
  auto store = [&](std::size_t row) {
    std::copy(p.begin(), p.end(), pep.power_w.begin() + static_cast<std::ptrdiff_t>(row * n));
  };
  store(direction == Direction::forward ? 0 : nsteps);

  for (std::size_t k = 0; k < nsteps; ++k) {
    sys.rhs(p.data(), k1.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k1[i];
    sys.rhs(tmp.data(), k2.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k2[i];
    sys.rhs(tmp.data(), k3.data());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + h * k3[i];
    sys.rhs(tmp.data(), k4.data());
    for (std::size_t i = 0; i < n; ++i)
      p[i] += h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    for (double v : p)
      if (!std::isfinite(v))
        throw std::runtime_error("solve_pep: power diverged at z = " +
                                 std::to_string(pep.z_m[k + 1]) +
                                 " m; try a smaller integration step");
    store(direction == Direction::forward ? k + 1 : nsteps - 1 - k);
  }
  return pep;
}

}  // namespace detail

/// Integrates the coupled ISRS power equations across one span with the
/// classical fixed-step 4th-order scheme.
///
/// forward:  `launch_or_receive` is the z = 0 profile.
/// backward: `launch_or_receive` is the z = L profile and the integration
///           runs in decreasing z to recover the launch profile.
/// The returned profile is always reported in ascending z.
inline PowerEvolutionProfile solve_pep(const LaunchProfile& launch_or_receive,
                                       const SpanSpec& span, const ChannelGrid& grid,
                                       Direction direction = Direction::forward,
                                       double step_m = 50.0) {
  if (step_m <= 0.0) throw std::invalid_argument("solve_pep: step must be > 0");
  if (launch_or_receive.size() != grid.size())
    throw std::invalid_argument("solve_pep: profile/grid size mismatch");
  for (double v : launch_or_receive)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("solve_pep: powers must be finite and >= 0");
  detail::IsrsSystem sys(span, grid);
  return detail::integrate(sys, launch_or_receive, span.length_m, step_m, direction);
}

}  // namespace mbeon
