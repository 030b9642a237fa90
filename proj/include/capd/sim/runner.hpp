#pragma once

#include <json.hpp>

#include "capd/sim/world.hpp"

namespace capd::sim {

/// Ordered event records. Every record carries `tick` and `category`
/// (telemetry | attack | detection | decision | delivery | summary); the
/// remaining fields depend on the category. Fully determined by
/// (scenario, seed).
struct EventLog {
  std::vector<nlohmann::json> events;

  std::string to_jsonl() const;
  std::string to_text() const;

  /// Decision program codes in log order.
  std::vector<std::string> decision_codes() const;
  bool contains_decision(const std::string& code) const;
};

/// Runs the full loop: step -> ingest -> detect/select -> apply -> deliver,
/// once per tick, then appends a summary record.
EventLog run_scenario(const Scenario& scenario);

/// Bundled scenario JSON by name (usecase1_bandwidth, usecase2_jam,
/// usecase3_blind, usecase4_kinetic); nullptr when unknown.
const char* bundled_scenario(const std::string& name);

std::vector<std::string> bundled_scenario_names();

}  // namespace capd::sim
