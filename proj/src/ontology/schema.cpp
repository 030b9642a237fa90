#include "capd/ontology/schema.hpp"

#include <set>

namespace capd::ontology {

using rdf::Term;
using rdf::Triple;
namespace v = capd::vocab;

namespace {

void declare_class(rdf::Graph& g, const std::string& iri) {
  g.insert(Term::iri(iri), Term::iri(v::kRdfType), Term::iri(v::kRdfsClass));
}

void declare_property(rdf::Graph& g, const std::string& iri, const std::string& domain,
                      const std::string& range) {
  g.insert(Term::iri(iri), Term::iri(v::kRdfType), Term::iri(v::kRdfProperty));
  g.insert(Term::iri(iri), Term::iri(v::kDomain), Term::iri(domain));
  g.insert(Term::iri(iri), Term::iri(v::kRange), Term::iri(range));
}

}  // namespace

SchemaGraph builtin_schema() {
  SchemaGraph schema;
  rdf::Graph& g = schema.graph_;

  for (const char* name :
       {"Asset", "MovableAsset", "ImmovableAsset", "Attack", "Kinetic", "CyberAttack",
        "BandwidthAttack", "Observation", "BandwidthObservation", "TemporalEntity",
        "Result", "CourseOfAction", "MitigationPlan", "ProtectionProgram"})
    declare_class(g, v::bf(name));

  const Term sub = Term::iri(v::kSubClassOf);
  auto edge = [&](const char* c, const char* d) {
    g.insert(Term::iri(v::bf(c)), sub, Term::iri(v::bf(d)));
  };
  edge("MovableAsset", "Asset");
  edge("ImmovableAsset", "Asset");
  edge("Kinetic", "Attack");
  edge("CyberAttack", "Attack");
  edge("BandwidthAttack", "CyberAttack");
  edge("BandwidthObservation", "Observation");

  declare_property(g, v::bf("hasBandwidth"), v::bf("Observation"), v::bf("BandwidthObservation"));
  declare_property(g, v::sosa("phenomenonTime"), v::bf("Observation"), v::bf("TemporalEntity"));
  declare_property(g, v::bf("hasResult"), v::bf("Observation"), v::bf("Result"));
  declare_property(g, v::stix("mitigates"), v::bf("CourseOfAction"), v::bf("Attack"));
  declare_property(g, v::bf("listedPlan"), v::bf("CourseOfAction"), v::bf("MitigationPlan"));
  // hasProtectionProgram is declared in the bf vocabulary but queried with
  // the stix spelling; both IRIs are declared and marked equivalent so data
  // using either spelling resolves.
  declare_property(g, v::bf("hasProtectionProgram"), v::bf("MitigationPlan"),
                   v::bf("ProtectionProgram"));
  declare_property(g, v::stix("hasProtectionProgram"), v::bf("MitigationPlan"),
                   v::bf("ProtectionProgram"));
  g.insert(Term::iri(v::bf("hasProtectionProgram")), Term::iri(v::kEquivalentProperty),
           Term::iri(v::stix("hasProtectionProgram")));

  declare_property(g, v::bf("lowRange"), v::bf("BandwidthAttack"), v::kXsdDecimal);
  declare_property(g, v::bf("highRange"), v::bf("BandwidthAttack"), v::kXsdDecimal);
  declare_property(g, v::bf("value"), v::bf("Result"), v::kXsdDecimal);
  declare_property(g, v::bf("code"), v::bf("ProtectionProgram"), v::kXsdString);

  return schema;
}

bool SchemaGraph::is_subclass_of(const Term& c1, const Term& c2) const {
  if (c1 == c2)
    return true;
  const Term sub = Term::iri(v::kSubClassOf);
  std::set<Term> visited{c1};
  std::vector<Term> frontier{c1};
  while (!frontier.empty()) {
    Term cur = frontier.back();
    frontier.pop_back();
    for (const Triple& t : graph_.match(cur, sub, std::nullopt)) {
      if (t.object == c2)
        return true;
      if (visited.insert(t.object).second)
        frontier.push_back(t.object);
    }
  }
  return false;
}

std::vector<Term> SchemaGraph::equivalents(const Term& property) const {
  std::vector<Term> out{property};
  const Term eq = Term::iri(v::kEquivalentProperty);
  for (const Triple& t : graph_.match(property, eq, std::nullopt))
    out.push_back(t.object);
  for (const Triple& t : graph_.match(std::nullopt, eq, property))
    out.push_back(t.subject);
  return out;
}

bool SchemaGraph::subclass_acyclic() const {
  const Term sub = Term::iri(v::kSubClassOf);
  std::set<Term> classes;
  for (const Triple& t : graph_.match(std::nullopt, sub, std::nullopt)) {
    classes.insert(t.subject);
    classes.insert(t.object);
  }
  // A cycle exists iff some class reaches itself through >= 1 edge.
  for (const Term& c : classes) {
    std::set<Term> visited;
    std::vector<Term> frontier;
    for (const Triple& t : graph_.match(c, sub, std::nullopt))
      frontier.push_back(t.object);
    while (!frontier.empty()) {
      Term cur = frontier.back();
      frontier.pop_back();
      if (cur == c)
        return false;
      if (visited.insert(cur).second)
        for (const Triple& t : graph_.match(cur, sub, std::nullopt))
          frontier.push_back(t.object);
    }
  }
  return true;
}

}  // namespace capd::ontology
