#include "capd/sim/runner.hpp"

#include <sstream>

#include "capd/sparql/parser.hpp"

namespace capd::sim {

using nlohmann::json;
using policy::Metric;
using policy::MitigationDecision;
using policy::ObservationRecord;

std::string EventLog::to_jsonl() const {
  std::string out;
  for (const json& e : events) {
    out += e.dump();
    out += '\n';
  }
  return out;
}

std::string EventLog::to_text() const {
  std::ostringstream out;
  for (const json& e : events) {
    out << "t=" << e.at("tick").get<long long>() << "  " << e.at("category").get<std::string>();
    for (auto it = e.begin(); it != e.end(); ++it) {
      if (it.key() == "tick" || it.key() == "category")
        continue;
      out << "  " << it.key() << "=";
      if (it.value().is_string())
        out << it.value().get<std::string>();
      else
        out << it.value().dump();
    }
    out << "\n";
  }
  return out.str();
}

std::vector<std::string> EventLog::decision_codes() const {
  std::vector<std::string> codes;
  for (const json& e : events)
    if (e.at("category") == "decision")
      codes.push_back(e.at("code").get<std::string>());
  return codes;
}

bool EventLog::contains_decision(const std::string& code) const {
  for (const json& e : events)
    if (e.at("category") == "decision" && e.at("code") == code)
      return true;
  return false;
}

namespace {

policy::WorldView build_view(const WorldState& world, const Scenario& scenario,
                             const std::vector<ObservationRecord>& latest, long long tick) {
  policy::WorldView view;
  view.tick = tick;
  view.latest = latest;
  for (const AssetSpec& spec : scenario.assets) {
    const AssetState& st = world.assets.at(spec.id);
    policy::AssetView av;
    av.id = spec.id;
    av.kind = to_string(spec.kind);
    av.movable = spec.movable;
    av.alive = st.alive;
    av.x = st.x;
    av.y = st.y;
    // Fallback capacity: an inactive lorawan link this asset could send on.
    for (const LinkSpec& l : scenario.links)
      if (l.a == spec.id && l.tech == LinkTech::Lorawan && !world.links.at(l.id).active) {
        av.fallback_capacity_mbps = l.capacity_mbps;
        break;
      }
    view.assets.push_back(std::move(av));
  }
  return view;
}

json decision_event(long long tick, const MitigationDecision& d,
                    const rdf::PrefixMap& prefixes) {
  json e;
  e["tick"] = tick;
  e["category"] = "decision";
  e["code"] = d.program_code;
  e["target"] = d.target_asset;
  e["attack"] = rdf::render_term(d.attack, prefixes);
  e["plan"] = rdf::render_term(d.plan, prefixes);
  e["explanation_kind"] = d.explanation.kind;
  if (!d.explanation.bindings.empty()) {
    json row;
    for (const auto& [var, term] : d.explanation.bindings)
      row[var] = term.is_literal() ? term.value() : rdf::render_term(term, prefixes);
    e["row"] = row;
  }
  return e;
}

}  // namespace

EventLog run_scenario(const Scenario& scenario) {
  scenario.check();

  EventLog log;
  policy::PolicyEngine engine(scenario.policy.stages, scenario.policy.detection,
                              scenario.policy.abac);
  engine.seed_mitigation_fixture();
  sparql::SelectQuery fixture_query =
      sparql::parse_query(policy::PolicyEngine::fixture_query_text());

  WorldState world = WorldState::init(scenario);
  Lcg rng(scenario.seed);

  long long decision_count = 0;
  long long deliveries = 0, delivered = 0;
  json per_tick_decisions = json::array();

  for (long long tick = 0; tick < scenario.duration_ticks; ++tick) {
    StepResult sr = step(world, scenario, rng);

    for (const AttackEvent& e : sr.applied_attacks)
      log.events.push_back({{"tick", tick},
                            {"category", "attack"},
                            {"kind", to_string(e.kind)},
                            {"target", e.target},
                            {"multiplier", e.multiplier}});
    for (const std::string& id : sr.arrivals)
      log.events.push_back({{"tick", tick},
                            {"category", "decision"},
                            {"code", "REPOSITION_ARRIVED"},
                            {"target", id},
                            {"attack", ""},
                            {"plan", ""},
                            {"explanation_kind", "movement"}});

    for (const ObservationRecord& rec : sr.observations) {
      log.events.push_back({{"tick", tick},
                            {"category", "telemetry"},
                            {"asset", rec.asset_id},
                            {"metric", policy::to_string(rec.metric)},
                            {"value", rec.value}});
      if (rec.metric != Metric::Position)
        engine.ingest(rec);
    }

    policy::WorldView view = build_view(world, scenario, sr.observations, tick);
    std::vector<MitigationDecision> decisions = engine.detect_and_decide(view);
    for (const MitigationDecision& d : decisions)
      log.events.push_back({{"tick", tick},
                            {"category", "detection"},
                            {"attack", rdf::render_term(d.attack, engine.kb().prefixes())},
                            {"code", d.program_code}});

    // Stage selection via the fixture query; apply this tick's rows.
    for (MitigationDecision& d : engine.select_mitigation(fixture_query))
      if (d.tick == tick)
        decisions.push_back(std::move(d));

    json tick_codes = json::array();
    for (const MitigationDecision& d : decisions) {
      log.events.push_back(decision_event(tick, d, engine.kb().prefixes()));
      tick_codes.push_back(d.program_code);
      ++decision_count;
      MitigationOutcome outcome = apply_mitigation(world, scenario, d);
      if (outcome == MitigationOutcome::NoLorawanLink)
        log.events.push_back({{"tick", tick},
                              {"category", "decision"},
                              {"code", "MITIGATION_FAILED"},
                              {"target", d.target_asset},
                              {"attack", rdf::render_term(d.attack, engine.kb().prefixes())},
                              {"plan", ""},
                              {"explanation_kind",
                               "no lorawan link available for " + d.target_asset}});
    }
    if (!tick_codes.empty())
      per_tick_decisions.push_back({{"tick", tick}, {"codes", tick_codes}});

    for (const DeliveryRecord& rec : deliver(world, scenario)) {
      bool allowed = true;
      std::string rule_id;
      if (!scenario.policy.abac.rules.empty()) {
        policy::AttrMap subject{{"id", rec.asset}, {"role", std::string("sensor")}};
        policy::AttrMap object{{"mode", to_string(rec.mode)},
                               {"required_mbps", rec.required_mbps}};
        auto decision = engine.check_access(subject, object, policy::AbacAction::Send);
        allowed = decision.permit;
        rule_id = decision.rule_id;
      }
      json e{{"tick", tick},
             {"category", "delivery"},
             {"asset", rec.asset},
             {"mode", to_string(rec.mode)},
             {"required_mbps", rec.required_mbps},
             {"available_mbps", rec.available_mbps},
             {"alive", rec.alive},
             {"delivered", rec.delivered && allowed}};
      if (!rule_id.empty())
        e["abac_rule"] = rule_id;
      log.events.push_back(std::move(e));
      ++deliveries;
      if (rec.delivered && allowed)
        ++delivered;
    }
  }

  log.events.push_back(
      {{"tick", scenario.duration_ticks},
       {"category", "summary"},
       {"total_decisions", decision_count},
       {"per_tick_decisions", per_tick_decisions},
       {"deliveries", deliveries},
       {"delivered", delivered},
       {"delivery_success_ratio",
        deliveries == 0 ? 0.0 : static_cast<double>(delivered) / static_cast<double>(deliveries)}});
  return log;
}

}  // namespace capd::sim
