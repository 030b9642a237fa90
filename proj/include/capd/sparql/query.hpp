#pragma once

#include <string>
#include <vector>

#include "capd/rdf/pattern.hpp"

namespace capd::sparql {

using rdf::Bindings;
using rdf::Comparison;
using rdf::PatternTerm;
using rdf::TriplePattern;

/// A projected column: plain `?var` or aliased `(?var AS ?name)`.
struct ProjectionItem {
  std::string source_var;
  std::string output_name;  // equals source_var for plain projections

  bool aliased() const { return output_name != source_var; }
};

/// One FILTER(...) group: a conjunction of comparisons.
struct FilterExpr {
  std::vector<Comparison> conjuncts;
};

/// Parsed SELECT query over a basic graph pattern.
struct SelectQuery {
  rdf::PrefixMap prefixes;
  std::vector<ProjectionItem> projection;
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;
  std::vector<std::string> order_by;

  /// All variables occurring in triple patterns.
  std::vector<std::string> pattern_variables() const;
};

}  // namespace capd::sparql
