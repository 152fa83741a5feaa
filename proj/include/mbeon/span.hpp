#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "mbeon/fiber.hpp"

namespace mbeon {

/// One amplified fiber span. Lumped extra losses (connectors, splices) are
/// not part of the propagation equation; they are folded into the required
/// amplifier gain and therefore into the ASE.
struct SpanSpec {
  double length_m = 70e3;
  FiberSpec fiber;
  std::map<std::string, AmplifierSpec> amplifiers;  // keyed by band name
  double lumped_loss_db = 0.0;

  [[nodiscard]] const AmplifierSpec& amplifier_for(const std::string& band) const {
    auto it = amplifiers.find(band);
    if (it == amplifiers.end())
      throw std::invalid_argument("SpanSpec: no amplifier configured for band " + band);
    return it->second;
  }

  void validate() const {
    if (length_m <= 0.0) throw std::invalid_argument("SpanSpec: length must be > 0");
    fiber.validate();
    for (const auto& [band, amp] : amplifiers) amp.validate();
  }
};

}  // namespace mbeon
