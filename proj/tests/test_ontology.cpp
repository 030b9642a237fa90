#include <doctest.h>

#include <random>

#include "capd/ontology/schema.hpp"
#include "capd/ontology/shapes.hpp"
#include "capd/policy/engine.hpp"

using namespace capd;
using ontology::SchemaGraph;
using rdf::Graph;
using rdf::Term;
using rdf::Triple;
namespace v = capd::vocab;

TEST_CASE("builtin schema carries the class taxonomy and property frames") {
  SchemaGraph schema = ontology::builtin_schema();
  const Graph& g = schema.graph();

  CHECK(g.contains(Triple(Term::iri(v::bf("BandwidthAttack")), Term::iri(v::kSubClassOf),
                          Term::iri(v::bf("CyberAttack")))));
  CHECK(g.contains(Triple(Term::iri(v::bf("hasBandwidth")), Term::iri(v::kDomain),
                          Term::iri(v::bf("Observation")))));
  CHECK(g.contains(Triple(Term::iri(v::bf("hasBandwidth")), Term::iri(v::kRange),
                          Term::iri(v::bf("BandwidthObservation")))));
  for (const char* cls : {"Asset", "MovableAsset", "ImmovableAsset", "Attack", "Kinetic",
                          "CyberAttack", "BandwidthAttack", "Observation",
                          "BandwidthObservation", "TemporalEntity", "Result", "CourseOfAction",
                          "MitigationPlan", "ProtectionProgram"})
    CHECK(g.contains(Triple(Term::iri(v::bf(cls)), Term::iri(v::kRdfType),
                            Term::iri(v::kRdfsClass))));

  CHECK(schema.subclass_acyclic());

  // Identical on every call.
  CHECK(ontology::builtin_schema().graph() == g);

  // Every declared property has exactly one domain and one range.
  for (const Triple& t : g.match(std::nullopt, Term::iri(v::kRdfType),
                                 Term::iri(v::kRdfProperty))) {
    CHECK(g.match(t.subject, Term::iri(v::kDomain), std::nullopt).size() == 1);
    CHECK(g.match(t.subject, Term::iri(v::kRange), std::nullopt).size() == 1);
  }
}

TEST_CASE("subclass reachability is reflexive and transitive") {
  SchemaGraph schema = ontology::builtin_schema();
  CHECK(schema.is_subclass_of(Term::iri(v::bf("BandwidthAttack")), Term::iri(v::bf("Attack"))));
  CHECK(schema.is_subclass_of(Term::iri(v::bf("Asset")), Term::iri(v::bf("Asset"))));
  CHECK_FALSE(schema.is_subclass_of(Term::iri(v::bf("Asset")), Term::iri(v::bf("Attack"))));
  CHECK_FALSE(schema.is_subclass_of(Term::iri(v::bf("Attack")),
                                    Term::iri(v::bf("BandwidthAttack"))));
}

TEST_CASE("equivalent property spellings resolve both ways") {
  SchemaGraph schema = ontology::builtin_schema();
  auto eq = schema.equivalents(Term::iri(v::bf("hasProtectionProgram")));
  REQUIRE(eq.size() == 2);
  auto eq2 = schema.equivalents(Term::iri(v::stix("hasProtectionProgram")));
  REQUIRE(eq2.size() == 2);
}

namespace {

Graph fixture_graph() {
  policy::PolicyEngine engine;
  engine.seed_mitigation_fixture();
  policy::ObservationRecord rec{"Asset_A", 1, policy::Metric::BandwidthMbps, 7.5, {}};
  engine.ingest(rec);
  return engine.kb().snapshot();
}

}  // namespace

TEST_CASE("the seeded fixture conforms to the default shapes") {
  SchemaGraph schema = ontology::builtin_schema();
  auto violations = ontology::validate(fixture_graph(), schema, ontology::default_shapes());
  for (const auto& violation : violations)
    MESSAGE(violation.message);
  CHECK(violations.empty());
}

TEST_CASE("missing hasResult is one min_count violation") {
  SchemaGraph schema = ontology::builtin_schema();
  Graph g = fixture_graph();
  Term obs = Term::iri(v::bf("obs_Asset_A_1"));
  auto results = g.match(obs, Term::iri(v::bf("hasResult")), std::nullopt);
  REQUIRE(results.size() == 1);
  g.remove(results[0]);
  // The orphaned result node stays conformant; only the observation fails.
  auto violations = ontology::validate(g, schema, ontology::default_shapes());
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].focus == obs);
  CHECK(violations[0].constraint == "min_count");
  CHECK(violations[0].message.find("hasResult") != std::string::npos);
}

TEST_CASE("inverted attack range is one numeric_range ordering violation") {
  SchemaGraph schema = ontology::builtin_schema();
  Graph g;
  Term atk = Term::iri(v::bf("atk_bad"));
  g.insert(atk, Term::iri(v::kRdfType), Term::iri(v::bf("BandwidthAttack")));
  g.insert(atk, Term::iri(v::bf("lowRange")), Term::decimal(5.0));
  g.insert(atk, Term::iri(v::bf("highRange")), Term::decimal(1.0));
  auto violations = ontology::validate(g, schema, ontology::default_shapes());
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].focus == atk);
  CHECK(violations[0].constraint == "numeric_range");
  CHECK(violations[0].message.find("ordering") != std::string::npos);
}

TEST_CASE("non-numeric result value violates numeric_range") {
  SchemaGraph schema = ontology::builtin_schema();
  Graph g;
  Term res = Term::iri(v::bf("res_x"));
  g.insert(res, Term::iri(v::kRdfType), Term::iri(v::bf("Result")));
  g.insert(res, Term::iri(v::bf("value")), Term::literal("not-a-number"));
  auto violations = ontology::validate(g, schema, ontology::default_shapes());
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].constraint == "numeric_range");
}

TEST_CASE("plans accept either hasProtectionProgram spelling") {
  SchemaGraph schema = ontology::builtin_schema();
  for (const std::string& property :
       {v::bf("hasProtectionProgram"), v::stix("hasProtectionProgram")}) {
    Graph g;
    Term plan = Term::iri(v::bf("plan_x"));
    g.insert(plan, Term::iri(v::kRdfType), Term::iri(v::bf("MitigationPlan")));
    g.insert(plan, Term::iri(property), Term::iri(v::bf("pp_x")));
    CHECK(ontology::validate(g, schema, ontology::default_shapes()).empty());
  }
}

TEST_CASE("validation is insertion-order independent") {
  SchemaGraph schema = ontology::builtin_schema();
  Graph g = fixture_graph();
  g.remove(Triple(Term::iri(v::bf("pp_high")), Term::iri(v::bf("code")),
                  Term::literal("SEND_COLOR_VIDEO")));

  std::vector<Triple> triples(g.triples().begin(), g.triples().end());
  std::mt19937_64 rng(5);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(triples.begin(), triples.end(), rng);
    Graph permuted;
    for (const Triple& t : triples)
      permuted.insert(t);
    auto violations = ontology::validate(permuted, schema, ontology::default_shapes());
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].focus == Term::iri(v::bf("pp_high")));
    CHECK(violations[0].constraint == "min_count");
  }
}

TEST_CASE("max_count and datatype constraints fire") {
  SchemaGraph schema = ontology::builtin_schema();
  Graph g;
  Term pp = Term::iri(v::bf("pp_x"));
  g.insert(pp, Term::iri(v::kRdfType), Term::iri(v::bf("ProtectionProgram")));
  g.insert(pp, Term::iri(v::bf("code")), Term::literal("A"));
  g.insert(pp, Term::iri(v::bf("code")), Term::literal("B"));
  auto violations = ontology::validate(g, schema, ontology::default_shapes());
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].constraint == "max_count");

  Graph g2;
  g2.insert(pp, Term::iri(v::kRdfType), Term::iri(v::bf("ProtectionProgram")));
  g2.insert(pp, Term::iri(v::bf("code")), Term::integer(7));
  auto violations2 = ontology::validate(g2, schema, ontology::default_shapes());
  REQUIRE(violations2.size() == 1);
  CHECK(violations2[0].constraint == "datatype");
}

TEST_CASE("shapes load from JSON") {
  auto shapes = ontology::shapes_from_json(R"({
    "shapes": [{
      "id": "S", "target_class": "http://purl.org/ArtIAMAS/battlefield#Result",
      "constraints": [
        {"kind": "min_count", "property": "http://purl.org/ArtIAMAS/battlefield#value", "count": 1},
        {"kind": "numeric_range", "property": "http://purl.org/ArtIAMAS/battlefield#value", "min": 0, "max": 10}
      ]
    }]
  })");
  REQUIRE(shapes.size() == 1);
  CHECK(shapes[0].constraints.size() == 2);

  SchemaGraph schema = ontology::builtin_schema();
  Graph g;
  Term res = Term::iri(v::bf("res_y"));
  g.insert(res, Term::iri(v::kRdfType), Term::iri(v::bf("Result")));
  g.insert(res, Term::iri(v::bf("value")), Term::decimal(42.0));
  auto violations = ontology::validate(g, schema, shapes);
  REQUIRE(violations.size() == 1);  // 42 > max 10
  CHECK(violations[0].constraint == "numeric_range");
}
