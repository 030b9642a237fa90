#pragma once

#include "capd/sim/scenario.hpp"

namespace capd::sim {

/// Linear congruential generator (Knuth MMIX parameters:
/// state = state * 6364136223846793005 + 1442695040888963407). Doubles are
/// drawn from the top 53 bits, so any implementation of these constants
/// reproduces identical streams.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

struct AssetState {
  bool alive = true;
  bool blinded = false;
  PayloadMode payload = PayloadMode::ColorVideo;
  double x = 0, y = 0;
  std::optional<std::pair<double, double>> move_target;
};

struct LinkState {
  bool active = true;
  bool jammed = false;
  double degradation = 1.0;           // [0, 1] multiplier on capacity
  double current_bandwidth_mbps = 0;  // capacity x degradation, 0 when jammed
};

struct WorldState {
  long long tick = 0;
  std::map<std::string, AssetState> assets;
  std::map<std::string, LinkState> links;

  static WorldState init(const Scenario& scenario);
};

struct StepResult {
  std::vector<policy::ObservationRecord> observations;
  std::vector<AttackEvent> applied_attacks;
  std::vector<std::string> arrivals;  // drones that reached their target
};

/// One tick: attack events apply first, drones in transit move, link
/// bandwidths update, then live assets emit telemetry (bandwidth per
/// active link with seeded +-5% noise, luminance per camera, audio level
/// per microphone). Advances world.tick.
StepResult step(WorldState& world, const Scenario& scenario, Lcg& rng);

enum class MitigationOutcome { Applied, NoLorawanLink, UnknownProgram, NoEffect };

/// Applies a decision's effects; visible from the next tick.
MitigationOutcome apply_mitigation(WorldState& world, const Scenario& scenario,
                                   const policy::MitigationDecision& decision);

struct DeliveryRecord {
  std::string asset;
  PayloadMode mode = PayloadMode::ColorVideo;
  double required_mbps = 0;
  double available_mbps = 0;
  bool alive = true;
  bool delivered = false;
};

/// Per sending asset (endpoint `a` of a link): delivered iff the sender is
/// alive, some link of its is active, and the active link's bandwidth
/// covers the current payload mode.
std::vector<DeliveryRecord> deliver(const WorldState& world, const Scenario& scenario);

}  // namespace capd::sim
