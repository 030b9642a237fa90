#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capd/policy/engine.hpp"

namespace capd::sim {

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

enum class AssetKind { Camera, Microphone, Handheld, Drone, Ugs };
enum class LinkTech { FourG, Lorawan };

std::string to_string(AssetKind k);
std::string to_string(LinkTech t);

struct AssetSpec {
  std::string id;
  AssetKind kind = AssetKind::Camera;
  double x = 0, y = 0;
  bool movable = false;
};

/// Endpoint `a` is the sending asset, `b` the receiver.
struct LinkSpec {
  std::string id;
  std::string a, b;
  LinkTech tech = LinkTech::FourG;
  double capacity_mbps = 10.0;
  bool active = true;
};

struct AttackEvent {
  enum class Kind { DegradeBandwidth, Jam, Blind, Destroy };
  long long tick = 0;
  Kind kind = Kind::DegradeBandwidth;
  std::string target;      // link id for degrade/jam, asset id for blind/destroy
  double multiplier = 1.0; // degrade only, in [0, 1]
};

std::string to_string(AttackEvent::Kind k);

/// Payload modes and the link bandwidth each one needs.
enum class PayloadMode { ColorVideo, GrayscaleVideo, StillImages, ObjectCount, Audio };

std::string to_string(PayloadMode m);

struct PayloadTable {
  double color_video = 5.0;
  double grayscale_video = 1.0;
  double still_images = 0.1;
  double object_count = 0.01;
  double audio = 0.05;

  double required(PayloadMode m) const;
  /// The mode a program code selects, if it is a payload program.
  static std::optional<PayloadMode> mode_for_program(const std::string& code);
};

struct PolicyConfig {
  policy::BandwidthStageConfig stages = policy::BandwidthStageConfig::defaults();
  policy::DetectionConfig detection;
  policy::AbacPolicy abac;
  PayloadTable payloads;
  double drone_speed_m_per_tick = 10.0;
};

struct Scenario {
  std::string name;
  std::vector<AssetSpec> assets;
  std::vector<LinkSpec> links;
  std::vector<AttackEvent> attacks;
  long long duration_ticks = 1;
  std::uint64_t seed = 1;
  PolicyConfig policy;

  const AssetSpec* asset(const std::string& id) const;
  const LinkSpec* link(const std::string& id) const;

  /// Structural checks: ids unique and resolvable, ticks in range,
  /// multipliers in [0,1], capacities positive, stage config valid.
  void check() const;
};

/// Parses a scenario JSON document; error messages carry the field path.
Scenario scenario_from_json(const std::string& text);

}  // namespace capd::sim
