#include "capd/sim/scenario.hpp"

#include <set>

#include <json.hpp>

namespace capd::sim {

using nlohmann::json;

std::string to_string(AssetKind k) {
  switch (k) {
    case AssetKind::Camera: return "camera";
    case AssetKind::Microphone: return "microphone";
    case AssetKind::Handheld: return "handheld";
    case AssetKind::Drone: return "drone";
    case AssetKind::Ugs: return "ugs";
  }
  return "?";
}

std::string to_string(LinkTech t) {
  return t == LinkTech::FourG ? "fourg" : "lorawan";
}

std::string to_string(AttackEvent::Kind k) {
  switch (k) {
    case AttackEvent::Kind::DegradeBandwidth: return "degrade_bandwidth";
    case AttackEvent::Kind::Jam: return "jam";
    case AttackEvent::Kind::Blind: return "blind";
    case AttackEvent::Kind::Destroy: return "destroy";
  }
  return "?";
}

std::string to_string(PayloadMode m) {
  switch (m) {
    case PayloadMode::ColorVideo: return "color_video";
    case PayloadMode::GrayscaleVideo: return "grayscale_video";
    case PayloadMode::StillImages: return "still_images";
    case PayloadMode::ObjectCount: return "object_count";
    case PayloadMode::Audio: return "audio";
  }
  return "?";
}

double PayloadTable::required(PayloadMode m) const {
  switch (m) {
    case PayloadMode::ColorVideo: return color_video;
    case PayloadMode::GrayscaleVideo: return grayscale_video;
    case PayloadMode::StillImages: return still_images;
    case PayloadMode::ObjectCount: return object_count;
    case PayloadMode::Audio: return audio;
  }
  return 0;
}

std::optional<PayloadMode> PayloadTable::mode_for_program(const std::string& code) {
  if (code == "SEND_COLOR_VIDEO") return PayloadMode::ColorVideo;
  if (code == "SEND_GRAYSCALE_VIDEO") return PayloadMode::GrayscaleVideo;
  if (code == "SEND_STILL_IMAGES") return PayloadMode::StillImages;
  if (code == "SEND_OBJECT_COUNT") return PayloadMode::ObjectCount;
  return std::nullopt;
}

const AssetSpec* Scenario::asset(const std::string& id) const {
  for (const auto& a : assets)
    if (a.id == id)
      return &a;
  return nullptr;
}

const LinkSpec* Scenario::link(const std::string& id) const {
  for (const auto& l : links)
    if (l.id == id)
      return &l;
  return nullptr;
}

void Scenario::check() const {
  if (duration_ticks <= 0)
    throw ScenarioError("duration_ticks must be positive");
  std::set<std::string> asset_ids, link_ids;
  for (const auto& a : assets) {
    if (a.id.empty())
      throw ScenarioError("assets[].id must be non-empty");
    if (!asset_ids.insert(a.id).second)
      throw ScenarioError("duplicate asset id '" + a.id + "'");
  }
  for (const auto& l : links) {
    if (!link_ids.insert(l.id).second)
      throw ScenarioError("duplicate link id '" + l.id + "'");
    if (!asset_ids.count(l.a))
      throw ScenarioError("links['" + l.id + "'].a references unknown asset '" + l.a + "'");
    if (!asset_ids.count(l.b))
      throw ScenarioError("links['" + l.id + "'].b references unknown asset '" + l.b + "'");
    if (l.capacity_mbps <= 0)
      throw ScenarioError("links['" + l.id + "'].capacity_mbps must be positive");
  }
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    const AttackEvent& e = attacks[i];
    std::string where = "attacks[" + std::to_string(i) + "]";
    if (e.tick < 0 || e.tick >= duration_ticks)
      throw ScenarioError(where + ".tick must lie in [0, duration_ticks)");
    bool is_link = e.kind == AttackEvent::Kind::DegradeBandwidth ||
                   e.kind == AttackEvent::Kind::Jam;
    if (is_link && !link_ids.count(e.target))
      throw ScenarioError(where + ".target references unknown link '" + e.target + "'");
    if (!is_link && !asset_ids.count(e.target))
      throw ScenarioError(where + ".target references unknown asset '" + e.target + "'");
    if (e.kind == AttackEvent::Kind::DegradeBandwidth &&
        (e.multiplier < 0.0 || e.multiplier > 1.0))
      throw ScenarioError(where + ".multiplier must lie in [0, 1]");
  }
  policy.stages.check();
  policy::validate_policy(policy.abac);
}

namespace {

AssetKind asset_kind_from_string(const std::string& s, const std::string& where) {
  if (s == "camera") return AssetKind::Camera;
  if (s == "microphone") return AssetKind::Microphone;
  if (s == "handheld") return AssetKind::Handheld;
  if (s == "drone") return AssetKind::Drone;
  if (s == "ugs") return AssetKind::Ugs;
  throw ScenarioError(where + ": unknown asset kind '" + s + "'");
}

LinkTech link_tech_from_string(const std::string& s, const std::string& where) {
  if (s == "fourg" || s == "4g") return LinkTech::FourG;
  if (s == "lorawan") return LinkTech::Lorawan;
  throw ScenarioError(where + ": unknown link technology '" + s + "'");
}

AttackEvent::Kind attack_kind_from_string(const std::string& s, const std::string& where) {
  if (s == "degrade_bandwidth") return AttackEvent::Kind::DegradeBandwidth;
  if (s == "jam") return AttackEvent::Kind::Jam;
  if (s == "blind") return AttackEvent::Kind::Blind;
  if (s == "destroy") return AttackEvent::Kind::Destroy;
  throw ScenarioError(where + ": unknown attack kind '" + s + "'");
}

policy::AttrValue attr_value_from_json(const json& jv, const std::string& where) {
  if (jv.is_string())
    return jv.get<std::string>();
  if (jv.is_number())
    return jv.get<double>();
  throw ScenarioError(where + ": attribute values must be strings or numbers");
}

policy::AttrPredicate predicate_from_json(const json& jp, const std::string& where) {
  policy::AttrPredicate pred;
  pred.attribute = jp.at("attr").get<std::string>();
  std::string op = jp.value("op", "=");
  if (op == "=") pred.op = policy::PredOp::Eq;
  else if (op == "!=") pred.op = policy::PredOp::Ne;
  else if (op == "in") pred.op = policy::PredOp::InSet;
  else if (op == "<") pred.op = policy::PredOp::Lt;
  else if (op == ">") pred.op = policy::PredOp::Gt;
  else throw ScenarioError(where + ": unknown predicate op '" + op + "'");
  if (jp.contains("values"))
    for (const auto& jv : jp.at("values"))
      pred.values.push_back(attr_value_from_json(jv, where));
  else if (jp.contains("value"))
    pred.values.push_back(attr_value_from_json(jp.at("value"), where));
  return pred;
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }

  Scenario sc;
  try {
    sc.name = doc.value("name", "scenario");
    sc.duration_ticks = doc.at("duration_ticks").get<long long>();
    sc.seed = doc.value("seed", 1ULL);

    for (const auto& ja : doc.at("assets")) {
      AssetSpec a;
      a.id = ja.at("id").get<std::string>();
      a.kind = asset_kind_from_string(ja.at("kind").get<std::string>(), "assets['" + a.id + "']");
      if (ja.contains("position")) {
        a.x = ja.at("position").at(0).get<double>();
        a.y = ja.at("position").at(1).get<double>();
      }
      a.movable = ja.value("movable", a.kind == AssetKind::Drone);
      sc.assets.push_back(std::move(a));
    }

    for (const auto& jl : doc.at("links")) {
      LinkSpec l;
      l.a = jl.at("a").get<std::string>();
      l.b = jl.at("b").get<std::string>();
      l.tech = link_tech_from_string(jl.at("tech").get<std::string>(),
                                     "links[" + l.a + "-" + l.b + "]");
      l.id = jl.value("id", l.a + "-" + l.b + "-" + to_string(l.tech));
      l.capacity_mbps = jl.at("capacity_mbps").get<double>();
      l.active = jl.value("active", true);
      sc.links.push_back(std::move(l));
    }

    for (const auto& je : doc.value("attacks", json::array())) {
      AttackEvent e;
      e.tick = je.at("tick").get<long long>();
      e.kind = attack_kind_from_string(je.at("kind").get<std::string>(), "attacks[]");
      e.target = je.at("target").get<std::string>();
      if (e.kind == AttackEvent::Kind::DegradeBandwidth)
        e.multiplier = je.at("multiplier").get<double>();
      sc.attacks.push_back(std::move(e));
    }

    if (doc.contains("policy")) {
      const json& jp = doc.at("policy");
      if (jp.contains("stages")) {
        sc.policy.stages.stages.clear();
        for (const auto& js : jp.at("stages"))
          sc.policy.stages.stages.push_back({js.at("name").get<std::string>(),
                                             js.at("low").get<double>(),
                                             js.at("high").get<double>(),
                                             js.at("program").get<std::string>()});
      }
      if (jp.contains("thresholds")) {
        const json& jt = jp.at("thresholds");
        sc.policy.detection.jam_floor_mbps =
            jt.value("jam_floor_mbps", sc.policy.detection.jam_floor_mbps);
        sc.policy.detection.jam_persistence =
            jt.value("jam_persistence_ticks", sc.policy.detection.jam_persistence);
        sc.policy.detection.blind_luminance =
            jt.value("blind_luminance", sc.policy.detection.blind_luminance);
        sc.policy.detection.blind_persistence =
            jt.value("blind_persistence_ticks", sc.policy.detection.blind_persistence);
      }
      if (jp.contains("payloads")) {
        const json& jt = jp.at("payloads");
        sc.policy.payloads.color_video = jt.value("color_video", 5.0);
        sc.policy.payloads.grayscale_video = jt.value("grayscale_video", 1.0);
        sc.policy.payloads.still_images = jt.value("still_images", 0.1);
        sc.policy.payloads.object_count = jt.value("object_count", 0.01);
        sc.policy.payloads.audio = jt.value("audio", 0.05);
      }
      sc.policy.drone_speed_m_per_tick =
          jp.value("drone_speed_m_per_tick", sc.policy.drone_speed_m_per_tick);
      for (const auto& jr : jp.value("abac", json::array())) {
        policy::AbacRule rule;
        rule.id = jr.at("id").get<std::string>();
        std::string effect = jr.at("effect").get<std::string>();
        if (effect == "permit") rule.effect = policy::Effect::Permit;
        else if (effect == "deny") rule.effect = policy::Effect::Deny;
        else throw ScenarioError("policy.abac['" + rule.id + "'].effect must be permit|deny");
        rule.action = policy::abac_action_from_string(jr.at("action").get<std::string>());
        for (const auto& jpred : jr.value("subject", json::array()))
          rule.subject_conditions.push_back(
              predicate_from_json(jpred, "policy.abac['" + rule.id + "'].subject"));
        for (const auto& jpred : jr.value("object", json::array()))
          rule.object_conditions.push_back(
              predicate_from_json(jpred, "policy.abac['" + rule.id + "'].object"));
        sc.policy.abac.rules.push_back(std::move(rule));
      }
    }
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("scenario field error: ") + e.what());
  }

  sc.check();
  return sc;
}

}  // namespace capd::sim
