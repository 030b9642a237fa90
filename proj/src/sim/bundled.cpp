#include "capd/sim/runner.hpp"

namespace capd::sim {

namespace {

// Staged bandwidth degradation: four phases of ~7.5 / 3.0 / 0.5 / 0.05 Mbps
// walking the payload down from color video to object counts.
const char* kUsecase1 = R"({
  "name": "usecase1_bandwidth",
  "duration_ticks": 12,
  "seed": 42,
  "assets": [
    {"id": "Asset_A", "kind": "camera", "position": [0, 0]},
    {"id": "Asset_B", "kind": "handheld", "position": [100, 0]}
  ],
  "links": [
    {"id": "a-b-4g", "a": "Asset_A", "b": "Asset_B", "tech": "fourg", "capacity_mbps": 10.0}
  ],
  "attacks": [
    {"tick": 0, "kind": "degrade_bandwidth", "target": "a-b-4g", "multiplier": 0.75},
    {"tick": 3, "kind": "degrade_bandwidth", "target": "a-b-4g", "multiplier": 0.3},
    {"tick": 6, "kind": "degrade_bandwidth", "target": "a-b-4g", "multiplier": 0.05},
    {"tick": 9, "kind": "degrade_bandwidth", "target": "a-b-4g", "multiplier": 0.005}
  ]
})";

// 4G link jammed outright; the engine fails over to the low-rate LoRaWAN
// link and drops the payload to still images.
const char* kUsecase2 = R"({
  "name": "usecase2_jam",
  "duration_ticks": 10,
  "seed": 42,
  "assets": [
    {"id": "Asset_A", "kind": "camera", "position": [0, 0]},
    {"id": "Asset_B", "kind": "handheld", "position": [100, 0]}
  ],
  "links": [
    {"id": "a-b-4g", "a": "Asset_A", "b": "Asset_B", "tech": "fourg", "capacity_mbps": 10.0},
    {"id": "a-b-lora", "a": "Asset_A", "b": "Asset_B", "tech": "lorawan",
     "capacity_mbps": 0.3, "active": false}
  ],
  "attacks": [
    {"tick": 2, "kind": "jam", "target": "a-b-4g"}
  ]
})";

// Camera physically covered; after the persistence window the engine
// switches the feed to the microphone.
const char* kUsecase3 = R"({
  "name": "usecase3_blind",
  "duration_ticks": 8,
  "seed": 42,
  "assets": [
    {"id": "Asset_A", "kind": "camera", "position": [0, 0]},
    {"id": "Mic_1", "kind": "microphone", "position": [1, 0]},
    {"id": "Asset_B", "kind": "handheld", "position": [100, 0]}
  ],
  "links": [
    {"id": "a-b-4g", "a": "Asset_A", "b": "Asset_B", "tech": "fourg", "capacity_mbps": 10.0}
  ],
  "attacks": [
    {"tick": 2, "kind": "blind", "target": "Asset_A"}
  ]
})";

// Ground sensor destroyed; the nearest drone is repositioned to cover the
// location (Drone_1 at distance 50 beats Drone_2 at distance 100).
const char* kUsecase4 = R"({
  "name": "usecase4_kinetic",
  "duration_ticks": 10,
  "seed": 42,
  "assets": [
    {"id": "UGS_1", "kind": "ugs", "position": [0, 0]},
    {"id": "Drone_1", "kind": "drone", "position": [30, 40], "movable": true},
    {"id": "Drone_2", "kind": "drone", "position": [60, 80], "movable": true},
    {"id": "Asset_B", "kind": "handheld", "position": [100, 0]}
  ],
  "links": [
    {"id": "ugs-b-4g", "a": "UGS_1", "b": "Asset_B", "tech": "fourg", "capacity_mbps": 10.0},
    {"id": "d1-b-4g", "a": "Drone_1", "b": "Asset_B", "tech": "fourg", "capacity_mbps": 10.0}
  ],
  "attacks": [
    {"tick": 1, "kind": "destroy", "target": "UGS_1"}
  ]
})";

}  // namespace

const char* bundled_scenario(const std::string& name) {
  if (name == "usecase1_bandwidth") return kUsecase1;
  if (name == "usecase2_jam") return kUsecase2;
  if (name == "usecase3_blind") return kUsecase3;
  if (name == "usecase4_kinetic") return kUsecase4;
  return nullptr;
}

std::vector<std::string> bundled_scenario_names() {
  return {"usecase1_bandwidth", "usecase2_jam", "usecase3_blind", "usecase4_kinetic"};
}

}  // namespace capd::sim
