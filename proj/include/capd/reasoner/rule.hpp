#pragma once

#include <string>
#include <vector>

#include "capd/rdf/pattern.hpp"

namespace capd::reasoner {

using rdf::Comparison;
using rdf::TriplePattern;

/// A safe Horn rule over triple patterns. Body patterns bind variables;
/// numeric builtins and isIRI guards restrict instantiations; head
/// templates instantiate to ground triples.
struct Rule {
  std::string name;
  std::vector<TriplePattern> body;
  std::vector<Comparison> builtins;
  std::vector<std::string> iri_guards;  // variables that must bind to IRIs
  std::vector<TriplePattern> head;
};

/// Raised for unsafe rules and malformed rule text.
class RuleError : public std::runtime_error {
 public:
  explicit RuleError(const std::string& what) : std::runtime_error(what) {}
};

/// Throws RuleError unless every head variable and every builtin/guard
/// variable occurs in some body triple pattern.
void check_safe(const Rule& rule);

/// RDFS-lite entailment:
///   R1 subclass transitivity,
///   R2 type propagation through subClassOf,
///   R3 domain entailment,
///   R4 range entailment for IRI objects.
std::vector<Rule> builtin_rules();

/// Parses one rule line:
///   name: ?s bf:p ?o, ?o a bf:C, ?v >= 2, isIRI(?o) => ?s a bf:D
/// Terms use SPARQL/Turtle syntax resolved against the given prefixes.
Rule parse_rule(const std::string& line, const rdf::PrefixMap& prefixes = rdf::default_prefixes());

/// Parses a rule file: one rule per line, '#' comments, blank lines ignored.
std::vector<Rule> parse_rules(const std::string& text,
                              const rdf::PrefixMap& prefixes = rdf::default_prefixes());

}  // namespace capd::reasoner
