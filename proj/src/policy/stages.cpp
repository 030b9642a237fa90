#include "capd/policy/stages.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

namespace capd::policy {

BandwidthStageConfig BandwidthStageConfig::defaults() {
  return {{
      {"very-low", 0.0, 0.0999, "SEND_OBJECT_COUNT"},
      {"low", 0.1, 0.999, "SEND_STILL_IMAGES"},
      {"medium", 1.0, 4.999, "SEND_GRAYSCALE_VIDEO"},
      {"high", 5.0, 100000.0, "SEND_COLOR_VIDEO"},
  }};
}

void BandwidthStageConfig::check() const {
  if (stages.empty())
    throw PolicyError("stage config has no stages");
  for (const Stage& s : stages) {
    if (s.low_mbps < 0 || s.high_mbps < 0)
      throw PolicyError("stage '" + s.name + "' has a negative bound");
    if (s.low_mbps > s.high_mbps)
      throw PolicyError("stage '" + s.name + "' has low > high");
    if (s.program_code.empty())
      throw PolicyError("stage '" + s.name + "' has no program code");
  }
  for (std::size_t i = 0; i < stages.size(); ++i)
    for (std::size_t j = i + 1; j < stages.size(); ++j) {
      const Stage& a = stages[i];
      const Stage& b = stages[j];
      if (std::max(a.low_mbps, b.low_mbps) <= std::min(a.high_mbps, b.high_mbps))
        throw PolicyError("stages '" + a.name + "' and '" + b.name +
                          "' have overlapping ranges");
    }
}

std::optional<Stage> BandwidthStageConfig::stage_for(double mbps) const {
  for (const Stage& s : stages)
    if (mbps >= s.low_mbps && mbps <= s.high_mbps)
      return s;
  return std::nullopt;
}

double quantize_bandwidth(double mbps) {
  // Round through a 4-decimal string so the result is bit-identical to
  // parsing that lexical form back; stage bounds are parsed from the same
  // kind of decimal strings, so boundary comparisons behave decimally.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", mbps);
  return std::strtod(buf, nullptr);
}

}  // namespace capd::policy
