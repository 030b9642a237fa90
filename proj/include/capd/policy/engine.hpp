#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "capd/ontology/schema.hpp"
#include "capd/ontology/shapes.hpp"
#include "capd/policy/abac.hpp"
#include "capd/policy/stages.hpp"
#include "capd/reasoner/kb.hpp"
#include "capd/sparql/eval.hpp"

namespace capd::policy {

enum class Metric { BandwidthMbps, Luminance, AudioLevel, Position };

std::string to_string(Metric m);

/// One telemetry sample.
struct ObservationRecord {
  std::string asset_id;
  long long tick = 0;
  Metric metric = Metric::BandwidthMbps;
  double value = 0.0;
  std::optional<std::pair<double, double>> position;
};

/// Detection thresholds; operational constants, overridable per scenario.
struct DetectionConfig {
  double jam_floor_mbps = 0.01;
  int jam_persistence = 3;
  double blind_luminance = 0.1;
  int blind_persistence = 3;
};

/// How a decision was reached: either a query solution (bindings plus the
/// KB triples the row matched) or a rule-derived proof.
struct Explanation {
  std::string kind;  // "query-row" or "rule-proof"
  rdf::Bindings bindings;
  std::vector<rdf::Triple> cited;
  std::string proof;  // rendered proof tree for rule-proof explanations
};

/// Selected course of action for one detected condition.
struct MitigationDecision {
  long long tick = 0;
  rdf::Term attack = rdf::Term::iri("urn:none");
  rdf::Term plan = rdf::Term::iri("urn:none");
  std::string program_code;
  std::string target_asset;
  Explanation explanation;
  std::optional<std::pair<double, double>> destination;  // repositioning only
};

/// Program codes for the non-stage mitigations.
inline constexpr const char* kSwitchToLorawan = "SWITCH_TO_LORAWAN";
inline constexpr const char* kSwitchToMicrophone = "SWITCH_TO_MICROPHONE";
inline constexpr const char* kRepositionNearestDrone = "REPOSITION_NEAREST_DRONE";
inline constexpr const char* kNoAssetAvailable = "NO_ASSET_AVAILABLE";

/// What detect_and_decide sees of the world each tick.
struct AssetView {
  std::string id;
  std::string kind;  // camera | microphone | handheld | drone | ugs
  bool movable = false;
  bool alive = true;
  double x = 0, y = 0;
  /// Capacity of an inactive fallback (LoRaWAN) link, when one exists.
  std::optional<double> fallback_capacity_mbps;
};

struct WorldView {
  long long tick = 0;
  std::vector<ObservationRecord> latest;
  std::vector<AssetView> assets;
};

/// The policy engine: owns the knowledge base, ingests telemetry, seeds
/// the mitigation fixture, and turns detections and query rows into
/// decisions.
class PolicyEngine {
 public:
  PolicyEngine() : PolicyEngine(BandwidthStageConfig::defaults(), {}, {}) {}
  PolicyEngine(BandwidthStageConfig stages, DetectionConfig detection, AbacPolicy abac);

  reasoner::KnowledgeBase& kb() { return kb_; }
  const reasoner::KnowledgeBase& kb() const { return kb_; }
  const ontology::SchemaGraph& schema() const { return schema_; }
  const BandwidthStageConfig& stages() const { return stages_; }
  const DetectionConfig& detection() const { return detection_; }
  const AbacPolicy& abac() const { return abac_; }

  /// Asserts the observation-graph shape the fixture query consumes and
  /// runs the rules. Returns the triples added. Re-ingesting the same
  /// (asset, tick, metric) throws. Position records do not touch the KB.
  std::vector<rdf::Triple> ingest(const ObservationRecord& rec);

  /// Asserts one BandwidthAttack + CourseOfAction + MitigationPlan +
  /// ProtectionProgram chain per stage, plus chains for the jamming,
  /// sensor-subversion, and kinetic attack kinds.
  void seed_mitigation_fixture();

  /// Runs a query projecting Time / BandwidthStage / Mitigation_Program
  /// and maps each row to a decision, in query order.
  std::vector<MitigationDecision> select_mitigation(const sparql::SelectQuery& query);

  /// Jamming, sensor-subversion, and kinetic detection. Asserts attack
  /// instances into the KB; the kind->course-of-action rule links them to
  /// their mitigation chain.
  std::vector<MitigationDecision> detect_and_decide(const WorldView& view);

  AccessDecision check_access(const AttrMap& subject, const AttrMap& object,
                              AbacAction action) const {
    return policy::check_access(abac_, subject, object, action);
  }

  bool program_registered(const std::string& code) const { return programs_.count(code) != 0; }

  /// The fixture query from the bandwidth use case.
  static const char* fixture_query_text();

 private:
  MitigationDecision decision_from_attack(const rdf::Term& attack, long long tick,
                                          const std::string& target);
  rdf::Term assert_attack(const std::string& kind, const std::string& node_hint,
                          const std::string& type_class, long long tick,
                          const std::string& target);

  ontology::SchemaGraph schema_;
  reasoner::KnowledgeBase kb_;
  BandwidthStageConfig stages_;
  DetectionConfig detection_;
  AbacPolicy abac_;
  std::set<std::string> programs_;
  std::set<std::string> ingested_;   // "asset/tick/metric" dedup keys
  std::map<std::string, int> below_jam_floor_;   // consecutive ticks per asset
  std::map<std::string, int> below_luminance_;   // consecutive ticks per asset
  std::set<std::string> handled_;    // attack occurrences already decided
  bool fixture_seeded_ = false;
};

}  // namespace capd::policy
