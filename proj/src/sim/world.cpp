#include "capd/sim/world.hpp"

#include <cmath>
#include <set>

namespace capd::sim {

using policy::Metric;
using policy::ObservationRecord;

WorldState WorldState::init(const Scenario& scenario) {
  WorldState w;
  for (const AssetSpec& a : scenario.assets) {
    AssetState st;
    st.x = a.x;
    st.y = a.y;
    if (a.kind == AssetKind::Microphone)
      st.payload = PayloadMode::Audio;
    w.assets[a.id] = st;
  }
  for (const LinkSpec& l : scenario.links) {
    LinkState st;
    st.active = l.active;
    st.current_bandwidth_mbps = l.capacity_mbps;
    w.links[l.id] = st;
  }
  return w;
}

StepResult step(WorldState& world, const Scenario& scenario, Lcg& rng) {
  StepResult result;

  // Attack events first.
  for (const AttackEvent& e : scenario.attacks) {
    if (e.tick != world.tick)
      continue;
    result.applied_attacks.push_back(e);
    switch (e.kind) {
      case AttackEvent::Kind::DegradeBandwidth:
        world.links[e.target].degradation = e.multiplier;
        break;
      case AttackEvent::Kind::Jam:
        world.links[e.target].jammed = true;
        break;
      case AttackEvent::Kind::Blind:
        world.assets[e.target].blinded = true;
        break;
      case AttackEvent::Kind::Destroy:
        world.assets[e.target].alive = false;
        break;
    }
  }

  // Drones in transit.
  for (const AssetSpec& spec : scenario.assets) {
    AssetState& st = world.assets[spec.id];
    if (!st.move_target || !st.alive)
      continue;
    double dx = st.move_target->first - st.x;
    double dy = st.move_target->second - st.y;
    double dist = std::sqrt(dx * dx + dy * dy);
    double speed = scenario.policy.drone_speed_m_per_tick;
    if (dist <= speed) {
      st.x = st.move_target->first;
      st.y = st.move_target->second;
      st.move_target.reset();
      result.arrivals.push_back(spec.id);
    } else {
      st.x += dx / dist * speed;
      st.y += dy / dist * speed;
    }
  }

  // Link state.
  for (const LinkSpec& spec : scenario.links) {
    LinkState& st = world.links[spec.id];
    st.current_bandwidth_mbps = st.jammed ? 0.0 : spec.capacity_mbps * st.degradation;
  }

  // Telemetry, in declaration order for a reproducible noise stream.
  for (const LinkSpec& spec : scenario.links) {
    const LinkState& st = world.links[spec.id];
    if (!st.active)
      continue;
    const AssetState& sender = world.assets[spec.a];
    if (!sender.alive)
      continue;
    double noisy = st.current_bandwidth_mbps * (1.0 + rng.uniform(-0.05, 0.05));
    ObservationRecord rec;
    rec.asset_id = spec.a;
    rec.tick = world.tick;
    rec.metric = Metric::BandwidthMbps;
    rec.value = policy::quantize_bandwidth(noisy);
    result.observations.push_back(std::move(rec));
  }
  for (const AssetSpec& spec : scenario.assets) {
    const AssetState& st = world.assets[spec.id];
    if (!st.alive)
      continue;
    if (spec.kind == AssetKind::Camera) {
      ObservationRecord rec;
      rec.asset_id = spec.id;
      rec.tick = world.tick;
      rec.metric = Metric::Luminance;
      rec.value = st.blinded ? 0.02 : 0.8;
      result.observations.push_back(std::move(rec));
    } else if (spec.kind == AssetKind::Microphone) {
      ObservationRecord rec;
      rec.asset_id = spec.id;
      rec.tick = world.tick;
      rec.metric = Metric::AudioLevel;
      rec.value = 0.5;
      result.observations.push_back(std::move(rec));
    }
  }

  ++world.tick;
  return result;
}

namespace {

// The sender's active link, if any; scenario declaration order decides.
const LinkSpec* active_link_of(const WorldState& world, const Scenario& scenario,
                               const std::string& asset) {
  for (const LinkSpec& l : scenario.links)
    if (l.a == asset && world.links.at(l.id).active)
      return &l;
  return nullptr;
}

}  // namespace

MitigationOutcome apply_mitigation(WorldState& world, const Scenario& scenario,
                                   const policy::MitigationDecision& decision) {
  const std::string& code = decision.program_code;

  if (auto mode = PayloadTable::mode_for_program(code)) {
    if (decision.target_asset.empty())
      return MitigationOutcome::NoEffect;
    AssetState& st = world.assets[decision.target_asset];
    // A sender switched to the microphone keeps its audio modality; stage
    // programs only resize the video payload.
    if (st.payload == PayloadMode::Audio)
      return MitigationOutcome::NoEffect;
    st.payload = *mode;
    return MitigationOutcome::Applied;
  }
  if (code == policy::kSwitchToLorawan) {
    const LinkSpec* fourg = active_link_of(world, scenario, decision.target_asset);
    if (!fourg || fourg->tech != LinkTech::FourG) {
      // Already switched or no 4G side; look for any lorawan link to enable.
      fourg = nullptr;
    }
    for (const LinkSpec& l : scenario.links) {
      if (l.tech != LinkTech::Lorawan || l.a != decision.target_asset)
        continue;
      if (fourg && !(l.b == fourg->b))
        continue;
      if (fourg)
        world.links[fourg->id].active = false;
      world.links[l.id].active = true;
      return MitigationOutcome::Applied;
    }
    return MitigationOutcome::NoLorawanLink;
  }
  if (code == policy::kSwitchToMicrophone) {
    if (!decision.target_asset.empty())
      world.assets[decision.target_asset].payload = PayloadMode::Audio;
    return MitigationOutcome::Applied;
  }
  if (code == policy::kRepositionNearestDrone) {
    if (decision.target_asset.empty() || !decision.destination)
      return MitigationOutcome::NoEffect;
    world.assets[decision.target_asset].move_target = decision.destination;
    return MitigationOutcome::Applied;
  }
  if (code == policy::kNoAssetAvailable)
    return MitigationOutcome::NoEffect;
  return MitigationOutcome::UnknownProgram;
}

std::vector<DeliveryRecord> deliver(const WorldState& world, const Scenario& scenario) {
  std::vector<DeliveryRecord> records;
  std::set<std::string> senders;
  for (const LinkSpec& l : scenario.links)
    senders.insert(l.a);
  for (const AssetSpec& spec : scenario.assets) {
    if (!senders.count(spec.id))
      continue;
    const AssetState& st = world.assets.at(spec.id);
    DeliveryRecord rec;
    rec.asset = spec.id;
    rec.mode = st.payload;
    rec.required_mbps = scenario.policy.payloads.required(st.payload);
    const LinkSpec* link = active_link_of(world, scenario, spec.id);
    rec.available_mbps = link ? world.links.at(link->id).current_bandwidth_mbps : 0.0;
    rec.alive = st.alive;
    rec.delivered = st.alive && link && rec.required_mbps <= rec.available_mbps;
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace capd::sim
