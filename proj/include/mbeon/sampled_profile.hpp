#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mbeon {

/// A tabulated scalar profile y(x) evaluated by piecewise-linear
/// interpolation. Queries outside the tabulated range are rejected;
/// there is deliberately no extrapolation.
class SampledProfile {
 public:
  SampledProfile() = default;

  SampledProfile(std::vector<double> xs, std::vector<double> ys, std::string label = {})
      : x_(std::move(xs)), y_(std::move(ys)), label_(std::move(label)) {
    if (x_.size() != y_.size() || x_.size() < 2)
      throw std::invalid_argument("SampledProfile: need >= 2 matching samples (" + label_ + ")");
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
        throw std::invalid_argument("SampledProfile: non-finite sample (" + label_ + ")");
      if (i > 0 && x_[i] <= x_[i - 1])
        throw std::invalid_argument("SampledProfile: abscissae not strictly increasing (" + label_ + ")");
    }
  }

  [[nodiscard]] double value_at(double x) const {
    if (x < x_.front() || x > x_.back())
      throw std::out_of_range("SampledProfile: query " + std::to_string(x) +
                              " outside [" + std::to_string(x_.front()) + ", " +
                              std::to_string(x_.back()) + "] (" + label_ + ")");
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    if (it == x_.end()) return y_.back();
    std::size_t hi = static_cast<std::size_t>(it - x_.begin());
    if (hi == 0) return y_.front();
    std::size_t lo = hi - 1;
    double t = (x - x_[lo]) / (x_[hi] - x_[lo]);
    return y_[lo] + t * (y_[hi] - y_[lo]);
  }

  [[nodiscard]] double min_x() const { return x_.front(); }
  [[nodiscard]] double max_x() const { return x_.back(); }
  [[nodiscard]] std::size_t size() const { return x_.size(); }
  [[nodiscard]] const std::vector<double>& xs() const { return x_; }
  [[nodiscard]] const std::vector<double>& ys() const { return y_; }
  [[nodiscard]] const std::string& label() const { return label_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::string label_;
};

/// Spec'd evaluation entry point for tabulated profiles.
inline double profile_at(const SampledProfile& table, double x) { return table.value_at(x); }

}  // namespace mbeon
