#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capd/policy/abac.hpp"

namespace capd::policy {

/// One bandwidth band mapped to a protection program. Bounds are
/// inclusive on both ends, matching the fixture query's filter.
struct Stage {
  std::string name;
  double low_mbps;
  double high_mbps;
  std::string program_code;
};

/// Telemetry is quantized to this step so every emitted bandwidth value
/// lands inside exactly one of the default stages despite the inclusive
/// bounds leaving sub-quantum gaps between bands.
inline constexpr double kBandwidthQuantum = 0.0001;

/// The four default bands. 100000 Mbps stands in for an unbounded top.
struct BandwidthStageConfig {
  std::vector<Stage> stages;

  static BandwidthStageConfig defaults();

  /// Throws PolicyError on overlapping or inverted ranges.
  void check() const;

  /// The stage whose inclusive range contains the value, if any.
  std::optional<Stage> stage_for(double mbps) const;
};

/// Rounds a telemetry value onto the stage-safe lattice.
double quantize_bandwidth(double mbps);

}  // namespace capd::policy
