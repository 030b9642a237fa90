#pragma once

#include <string>
#include <vector>

#include "capd/rdf/graph.hpp"

namespace capd::ontology {

/// The built-in IoBT schema: asset/attack/observation/mitigation classes,
/// their subclass taxonomy, and the properties linking them, as an RDF
/// graph. Immutable after construction.
class SchemaGraph {
 public:
  const rdf::Graph& graph() const { return graph_; }

  /// Reflexive-transitive reachability over rdfs:subClassOf.
  bool is_subclass_of(const rdf::Term& c1, const rdf::Term& c2) const;

  /// The property itself plus any owl:equivalentProperty aliases.
  std::vector<rdf::Term> equivalents(const rdf::Term& property) const;

  /// True iff the subClassOf relation has no cycles.
  bool subclass_acyclic() const;

 private:
  friend SchemaGraph builtin_schema();
  rdf::Graph graph_;
};

/// Builds the schema graph; identical on every call.
SchemaGraph builtin_schema();

inline bool is_subclass_of(const SchemaGraph& schema, const rdf::Term& c1, const rdf::Term& c2) {
  return schema.is_subclass_of(c1, c2);
}

}  // namespace capd::ontology
