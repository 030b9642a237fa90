#include <doctest.h>

#include <random>

#include "capd/ontology/schema.hpp"
#include "capd/rdf/turtle.hpp"
#include "support/oracles.hpp"

using namespace capd;
using rdf::Graph;
using rdf::ParseError;
using rdf::Term;
using rdf::Triple;
namespace v = capd::vocab;

TEST_CASE("prefix directive and the a keyword") {
  Graph g = rdf::parse_turtle(
      "@prefix bf: <http://purl.org/ArtIAMAS/battlefield#> . bf:A a bf:Asset .");
  REQUIRE(g.size() == 1);
  const Triple& t = *g.triples().begin();
  CHECK(t.subject == Term::iri("http://purl.org/ArtIAMAS/battlefield#A"));
  CHECK(t.predicate == Term::iri(v::kRdfType));
  CHECK(t.object == Term::iri("http://purl.org/ArtIAMAS/battlefield#Asset"));
}

TEST_CASE("bare numbers get integer and decimal datatypes") {
  Graph g = rdf::parse_turtle("bf:Res1 bf:value 4.2 . bf:Res2 bf:value 42 .");
  auto decimals = g.match(Term::iri(v::bf("Res1")), std::nullopt, std::nullopt);
  REQUIRE(decimals.size() == 1);
  CHECK(decimals[0].object.value() == "4.2");
  CHECK(decimals[0].object.datatype() == v::kXsdDecimal);
  auto ints = g.match(Term::iri(v::bf("Res2")), std::nullopt, std::nullopt);
  REQUIRE(ints.size() == 1);
  CHECK(ints[0].object.datatype() == v::kXsdInteger);
}

TEST_CASE("predicate and object lists") {
  Graph g = rdf::parse_turtle(
      "bf:A a bf:Asset ; bf:value 1, 2 ; sosa:phenomenonTime 3 .");
  CHECK(g.size() == 4);
  CHECK(g.match(std::nullopt, Term::iri(v::bf("value")), std::nullopt).size() == 2);
}

TEST_CASE("string literals with datatype and language tag") {
  Graph g = rdf::parse_turtle(
      "bf:A bf:code \"X\"^^xsd:string ; bf:name \"alpha\"@en ; bf:note \"p\\\"q\" .");
  auto code = g.match(std::nullopt, Term::iri(v::bf("code")), std::nullopt);
  REQUIRE(code.size() == 1);
  CHECK(code[0].object == Term::literal("X"));
  auto name = g.match(std::nullopt, Term::iri(v::bf("name")), std::nullopt);
  REQUIRE(name.size() == 1);
  CHECK(name[0].object.language() == "en");
  auto note = g.match(std::nullopt, Term::iri(v::bf("note")), std::nullopt);
  REQUIRE(note.size() == 1);
  CHECK(note[0].object.value() == "p\"q");
}

TEST_CASE("blank nodes are renamed store-scoped") {
  Graph g = rdf::parse_turtle("_:camera bf:value 1 . [] bf:value 2 . _:camera bf:value 3 .");
  std::set<std::string> labels;
  for (const Triple& t : g.triples()) {
    CHECK(t.subject.is_blank());
    labels.insert(t.subject.value());
  }
  CHECK(labels == std::set<std::string>{"b0", "b1"});
}

TEST_CASE("syntax errors carry position and token") {
  try {
    rdf::parse_turtle("bf:A bf:value .");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("object") != std::string::npos);
  }

  try {
    rdf::parse_turtle("\n\nunknown:A a bf:Asset .");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown prefix 'unknown'") != std::string::npos);
    CHECK(e.line() == 3);
  }
}

TEST_CASE("unsupported turtle forms are rejected") {
  CHECK_THROWS_AS(rdf::parse_turtle("bf:A bf:p ( 1 2 ) ."), ParseError);
  CHECK_THROWS_AS(rdf::parse_turtle("bf:A bf:p [ bf:q 1 ] ."), ParseError);
  CHECK_THROWS_AS(rdf::parse_turtle("bf:A bf:p \"\"\"multi\"\"\" ."), ParseError);
}

TEST_CASE("serialization is deterministic and parses back") {
  Graph g;
  g.insert(Term::iri(v::bf("B")), Term::iri(v::bf("value")), Term::decimal(4.2));
  g.insert(Term::iri(v::bf("A")), Term::iri(v::kRdfType), Term::iri(v::bf("Asset")));
  g.insert(Term::iri(v::bf("A")), Term::iri(v::bf("code")), Term::literal("X"));

  std::string once = rdf::serialize_turtle(g);
  std::string twice = rdf::serialize_turtle(g);
  CHECK(once == twice);
  CHECK(once.find("@prefix bf:") != std::string::npos);

  Graph back = rdf::parse_turtle(once);
  CHECK(back == g);
}

TEST_CASE("empty graph serializes to prefix directives only") {
  Graph g;
  std::string text = rdf::serialize_turtle(g);
  for (const auto& line : {"@prefix bf:", "@prefix sosa:", "@prefix stix:"})
    CHECK(text.find(line) != std::string::npos);
  CHECK(rdf::parse_turtle(text).size() == 0);
}

TEST_CASE("round-trip is identity on the builtin schema") {
  Graph schema = ontology::builtin_schema().graph();
  Graph back = rdf::parse_turtle(rdf::serialize_turtle(schema));
  CHECK(back == schema);
}

TEST_CASE("round-trip is identity modulo blank relabeling on random graphs") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    Graph g = test::random_graph(rng, 25);
    Graph back = rdf::parse_turtle(rdf::serialize_turtle(g));
    CHECK(rdf::isomorphic(g, back));
  }
}
