#include "capd/policy/engine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "capd/sparql/parser.hpp"

namespace capd::policy {

using rdf::Term;
using rdf::Triple;
namespace v = capd::vocab;

std::string to_string(Metric m) {
  switch (m) {
    case Metric::BandwidthMbps: return "bandwidth_mbps";
    case Metric::Luminance: return "luminance";
    case Metric::AudioLevel: return "audio_level";
    case Metric::Position: return "position";
  }
  return "?";
}

const char* PolicyEngine::fixture_query_text() {
  return R"(PREFIX bf:<http://purl.org/ArtIAMAS/battlefield#>
PREFIX sosa: <http://www.w3.org/ns/sosa/phenomenonTime#>
PREFIX stix: <http://purl.org/cyber/stix/mitigates#>

SELECT (?TS as ?Time) (?BA as ?BandwidthStage) (?code AS ?Mitigation_Program)
WHERE {
  ?BA a bf:BandwidthAttack;
      bf:lowRange ?l;
      bf:highRange ?h .
  ?BO a bf:BandwidthObservation;
      sosa:phenomenonTime  ?TS;
      bf:hasResult  ?Res .
  ?Res bf:value ?val .
  FILTER (?val >= ?l && ?val <= ?h).
  ?BAM stix:mitigates ?BA;
       bf:listedPlan ?MitigationPlan.
  ?MitigationPlan stix:hasProtectionProgram ?PP .
  ?PP bf:code ?code .
}
ORDER BY ?TS
)";
}

namespace {

// kind->course-of-action linkage: an attack instance tagged with a kind is
// mitigated by the course of action registered for that kind.
reasoner::Rule kind_coa_rule() {
  using rdf::PatternTerm;
  auto var = [](const char* n) { return PatternTerm::variable(n); };
  auto iri = [](const std::string& s) { return PatternTerm::constant(Term::iri(s)); };
  return {"kind-mitigation",
          {{var("atk"), iri(v::bf("attackKind")), var("k")},
           {var("coa"), iri(v::bf("handlesKind")), var("k")}},
          {},
          {},
          {{var("coa"), iri(v::stix("mitigates")), var("atk")}}};
}

std::string sanitize_id(const std::string& raw) {
  std::string out;
  for (char c : raw)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ? c : '_';
  return out;
}

}  // namespace

PolicyEngine::PolicyEngine(BandwidthStageConfig stages, DetectionConfig detection,
                           AbacPolicy abac)
    : schema_(ontology::builtin_schema()),
      stages_(std::move(stages)),
      detection_(detection),
      abac_(std::move(abac)) {
  stages_.check();
  validate_policy(abac_);
  kb_.add_rule(kind_coa_rule());
  for (const Triple& t : schema_.graph().triples())
    kb_.assert_fact(t);
  // Observation subtypes for the non-bandwidth metrics; data-level schema
  // additions next to the built-in classes.
  const Term sub = Term::iri(v::kSubClassOf);
  const Term type = Term::iri(v::kRdfType);
  for (const char* cls : {"LuminanceObservation", "AudioObservation"}) {
    kb_.assert_fact(Triple(Term::iri(v::bf(cls)), type, Term::iri(v::kRdfsClass)));
    kb_.assert_fact(Triple(Term::iri(v::bf(cls)), sub, Term::iri(v::bf("Observation"))));
  }
  for (const Stage& s : stages_.stages)
    programs_.insert(s.program_code);
  programs_.insert(kSwitchToLorawan);
  programs_.insert(kSwitchToMicrophone);
  programs_.insert(kRepositionNearestDrone);
  programs_.insert(kNoAssetAvailable);
  kb_.forward_chain();
}

std::vector<Triple> PolicyEngine::ingest(const ObservationRecord& rec) {
  if (rec.value < 0)
    throw PolicyError("observation value must be non-negative");
  if (rec.metric == Metric::Position)
    return {};  // positions live in the world view, not the graph

  std::string key = rec.asset_id + "/" + std::to_string(rec.tick) + "/" + to_string(rec.metric);
  if (!ingested_.insert(key).second)
    throw PolicyError("duplicate observation for " + key + "; observations are immutable");

  std::string asset = sanitize_id(rec.asset_id);
  std::string suffix = asset + "_" + std::to_string(rec.tick);
  std::string obs_name, res_name, cls;
  switch (rec.metric) {
    case Metric::BandwidthMbps:
      obs_name = "obs_" + suffix; res_name = "res_" + suffix; cls = "BandwidthObservation";
      break;
    case Metric::Luminance:
      obs_name = "lumobs_" + suffix; res_name = "lumres_" + suffix; cls = "LuminanceObservation";
      break;
    case Metric::AudioLevel:
      obs_name = "audobs_" + suffix; res_name = "audres_" + suffix; cls = "AudioObservation";
      break;
    case Metric::Position:
      break;
  }
  Term obs = Term::iri(v::bf(obs_name));
  Term res = Term::iri(v::bf(res_name));

  std::vector<Triple> added;
  auto put = [&](Triple t) {
    if (kb_.assert_fact(t))
      added.push_back(std::move(t));
  };
  put(Triple(obs, Term::iri(v::kRdfType), Term::iri(v::bf(cls))));
  put(Triple(obs, Term::iri(v::sosa("phenomenonTime")), Term::integer(rec.tick)));
  put(Triple(obs, Term::iri(v::bf("hasResult")), res));
  put(Triple(res, Term::iri(v::bf("value")), Term::decimal(rec.value)));
  kb_.forward_chain();
  return added;
}

void PolicyEngine::seed_mitigation_fixture() {
  if (fixture_seeded_)
    return;
  fixture_seeded_ = true;
  const Term type = Term::iri(v::kRdfType);

  auto chain = [&](const std::string& id, const std::optional<Term>& attack_node,
                   const std::string& code) {
    Term coa = Term::iri(v::bf("coa_" + id));
    Term plan = Term::iri(v::bf("plan_" + id));
    Term pp = Term::iri(v::bf("pp_" + id));
    kb_.assert_fact(Triple(coa, type, Term::iri(v::bf("CourseOfAction"))));
    if (attack_node)
      kb_.assert_fact(Triple(coa, Term::iri(v::stix("mitigates")), *attack_node));
    kb_.assert_fact(Triple(coa, Term::iri(v::bf("listedPlan")), plan));
    kb_.assert_fact(Triple(plan, type, Term::iri(v::bf("MitigationPlan"))));
    kb_.assert_fact(Triple(plan, Term::iri(v::stix("hasProtectionProgram")), pp));
    kb_.assert_fact(Triple(pp, type, Term::iri(v::bf("ProtectionProgram"))));
    kb_.assert_fact(Triple(pp, Term::iri(v::bf("code")), Term::literal(code)));
  };

  for (const Stage& s : stages_.stages) {
    std::string id = sanitize_id(s.name);
    Term attack = Term::iri(v::bf("atk_" + id));
    kb_.assert_fact(Triple(attack, type, Term::iri(v::bf("BandwidthAttack"))));
    kb_.assert_fact(
        Triple(attack, Term::iri(v::bf("lowRange")), Term::decimal(s.low_mbps)));
    kb_.assert_fact(
        Triple(attack, Term::iri(v::bf("highRange")), Term::decimal(s.high_mbps)));
    chain(id, attack, s.program_code);
  }

  // Per-kind mitigation chains: the mitigates edge is derived by the
  // kind-mitigation rule once attack instances appear.
  struct KindChain { const char* kind; const char* program; };
  for (const KindChain& k : {KindChain{"jamming", kSwitchToLorawan},
                             KindChain{"sensor_subversion", kSwitchToMicrophone},
                             KindChain{"kinetic", kRepositionNearestDrone}}) {
    std::string id = sanitize_id(k.kind);
    Term coa = Term::iri(v::bf("coa_" + id));
    kb_.assert_fact(Triple(coa, Term::iri(v::bf("handlesKind")), Term::literal(k.kind)));
    chain(id, std::nullopt, k.program);
  }
  kb_.forward_chain();
}

std::vector<MitigationDecision> PolicyEngine::select_mitigation(
    const sparql::SelectQuery& query) {
  for (const char* required : {"Time", "BandwidthStage", "Mitigation_Program"}) {
    bool found = false;
    for (const auto& item : query.projection)
      if (item.output_name == required)
        found = true;
    if (!found)
      throw PolicyError(std::string("mitigation query must project ?") + required);
  }

  rdf::Graph view = kb_.snapshot();
  std::vector<MitigationDecision> decisions;
  for (const sparql::Solution& sol : sparql::evaluate_with_provenance(query, view)) {
    MitigationDecision d;
    const Term& time = sol.row.at("Time");
    auto tick = time.numeric_value();
    if (!tick)
      throw PolicyError("Time binding is not numeric: " + time.to_string());
    d.tick = static_cast<long long>(*tick);
    d.attack = sol.row.at("BandwidthStage");
    const Term& code = sol.row.at("Mitigation_Program");
    d.program_code = code.value();
    if (!program_registered(d.program_code))
      throw PolicyError("query selected unregistered protection program '" + d.program_code +
                        "'");

    // The plan is on the attack's mitigation chain.
    for (const Triple& t : view.match(std::nullopt, Term::iri(v::stix("mitigates")), d.attack))
      for (const Triple& lp : view.match(t.subject, Term::iri(v::bf("listedPlan")), std::nullopt)) {
        d.plan = lp.object;
        break;
      }

    d.target_asset = [&]() -> std::string {
      // The observation node for this row names its asset: obs_<asset>_<tick>.
      for (const auto& [var, term] : sol.full) {
        if (!term.is_iri())
          continue;
        const std::string& iri = term.value();
        auto pos = iri.find("#obs_");
        if (pos == std::string::npos)
          continue;
        std::string local = iri.substr(pos + 5);
        std::string tick_suffix = "_" + std::to_string(d.tick);
        if (local.size() > tick_suffix.size() &&
            local.compare(local.size() - tick_suffix.size(), tick_suffix.size(), tick_suffix) == 0)
          return local.substr(0, local.size() - tick_suffix.size());
      }
      return "";
    }();

    d.explanation.kind = "query-row";
    d.explanation.bindings = sol.row;
    d.explanation.cited = sol.matched;
    decisions.push_back(std::move(d));
  }
  return decisions;
}

rdf::Term PolicyEngine::assert_attack(const std::string& kind, const std::string& node_hint,
                                      const std::string& type_class, long long tick,
                                      const std::string& target) {
  Term attack = Term::iri(
      v::bf("atk_" + sanitize_id(kind) + "_" + sanitize_id(node_hint) + "_" +
            std::to_string(tick)));
  const Term type = Term::iri(v::kRdfType);
  kb_.assert_fact(Triple(attack, type, Term::iri(v::bf(type_class))));
  kb_.assert_fact(Triple(attack, Term::iri(v::bf("attackKind")), Term::literal(kind)));
  kb_.assert_fact(Triple(attack, Term::iri(v::bf("targetsAsset")), Term::literal(target)));
  kb_.assert_fact(
      Triple(attack, Term::iri(v::sosa("phenomenonTime")), Term::integer(tick)));
  kb_.forward_chain();
  return attack;
}

MitigationDecision PolicyEngine::decision_from_attack(const Term& attack, long long tick,
                                                      const std::string& target) {
  MitigationDecision d;
  d.tick = tick;
  d.attack = attack;
  d.target_asset = target;

  rdf::Graph view = kb_.snapshot();
  Term coa = Term::iri("urn:none");
  for (const Triple& t : view.match(std::nullopt, Term::iri(v::stix("mitigates")), attack)) {
    coa = t.subject;
    break;
  }
  if (coa.value() == "urn:none")
    throw PolicyError("no course of action mitigates " + attack.to_string());
  for (const Triple& t : view.match(coa, Term::iri(v::bf("listedPlan")), std::nullopt)) {
    d.plan = t.object;
    break;
  }
  Term pp = Term::iri("urn:none");
  for (const Term& spelling :
       {Term::iri(v::stix("hasProtectionProgram")), Term::iri(v::bf("hasProtectionProgram"))})
    for (const Triple& t : view.match(d.plan, spelling, std::nullopt)) {
      pp = t.object;
      break;
    }
  for (const Triple& t : view.match(pp, Term::iri(v::bf("code")), std::nullopt)) {
    d.program_code = t.object.value();
    break;
  }
  if (d.program_code.empty())
    throw PolicyError("mitigation chain for " + attack.to_string() + " has no program code");
  if (!program_registered(d.program_code))
    throw PolicyError("unregistered protection program '" + d.program_code + "'");

  d.explanation.kind = "rule-proof";
  Triple mitigated(coa, Term::iri(v::stix("mitigates")), attack);
  d.explanation.cited.push_back(mitigated);
  d.explanation.proof = reasoner::format_proof(kb_.explain(mitigated), kb_.prefixes());
  return d;
}

std::vector<MitigationDecision> PolicyEngine::detect_and_decide(const WorldView& view) {
  std::vector<MitigationDecision> decisions;

  auto asset_info = [&](const std::string& id) -> const AssetView* {
    for (const AssetView& a : view.assets)
      if (a.id == id)
        return &a;
    return nullptr;
  };

  // (a) jamming: sustained bandwidth below the jam floor.
  // (b) sensor subversion: sustained luminance below the blind threshold.
  for (const ObservationRecord& rec : view.latest) {
    const AssetView* asset = asset_info(rec.asset_id);
    if (asset && !asset->alive)
      continue;
    if (rec.metric == Metric::BandwidthMbps) {
      int& count = below_jam_floor_[rec.asset_id];
      count = rec.value < detection_.jam_floor_mbps ? count + 1 : 0;
      if (count >= detection_.jam_persistence && handled_.insert("jam:" + rec.asset_id).second) {
        Term attack = assert_attack("jamming", rec.asset_id, "CyberAttack", view.tick,
                                    rec.asset_id);
        decisions.push_back(decision_from_attack(attack, view.tick, rec.asset_id));
        // Companion decision: the payload stage that fits the fallback
        // link's capacity. The stage attacks carry their own chains.
        if (asset && asset->fallback_capacity_mbps) {
          if (auto stage = stages_.stage_for(quantize_bandwidth(*asset->fallback_capacity_mbps))) {
            Term stage_attack = Term::iri(v::bf("atk_" + sanitize_id(stage->name)));
            decisions.push_back(decision_from_attack(stage_attack, view.tick, rec.asset_id));
          }
        }
      }
    } else if (rec.metric == Metric::Luminance) {
      int& count = below_luminance_[rec.asset_id];
      count = rec.value < detection_.blind_luminance ? count + 1 : 0;
      if (count >= detection_.blind_persistence &&
          handled_.insert("blind:" + rec.asset_id).second) {
        Term attack = assert_attack("sensor_subversion", rec.asset_id, "CyberAttack", view.tick,
                                    rec.asset_id);
        decisions.push_back(decision_from_attack(attack, view.tick, rec.asset_id));
      }
    }
  }

  // (c) kinetic: destroyed assets trigger repositioning of the nearest
  // movable airborne asset.
  for (const AssetView& victim : view.assets) {
    if (victim.alive || !handled_.insert("destroy:" + victim.id).second)
      continue;
    Term attack = assert_attack("kinetic", victim.id, "Kinetic", view.tick, victim.id);
    const AssetView* nearest = nullptr;
    double best = 0;
    for (const AssetView& cand : view.assets) {
      if (!cand.alive || !cand.movable || cand.kind != "drone" || cand.id == victim.id)
        continue;
      double dx = cand.x - victim.x, dy = cand.y - victim.y;
      double dist = std::sqrt(dx * dx + dy * dy);
      if (!nearest || dist < best || (dist == best && cand.id < nearest->id)) {
        nearest = &cand;
        best = dist;
      }
    }
    if (!nearest) {
      MitigationDecision d;
      d.tick = view.tick;
      d.attack = attack;
      d.program_code = kNoAssetAvailable;
      d.target_asset = "";
      d.explanation.kind = "rule-proof";
      d.explanation.proof = "no movable airborne asset available for repositioning\n";
      decisions.push_back(std::move(d));
      continue;
    }
    MitigationDecision d = decision_from_attack(attack, view.tick, nearest->id);
    d.destination = std::make_pair(victim.x, victim.y);
    decisions.push_back(std::move(d));
  }

  return decisions;
}

}  // namespace capd::policy
