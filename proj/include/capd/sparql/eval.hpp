#pragma once

#include <vector>

#include "capd/sparql/query.hpp"

namespace capd::sparql {

/// A projected solution row plus the machinery needed to explain it: the
/// full pre-projection bindings and the ground triples the patterns matched.
struct Solution {
  Bindings row;                       // projected, aliases applied
  Bindings full;                      // every pattern variable
  std::vector<rdf::Triple> matched;   // instantiated patterns, in pattern order
};

/// Basic-graph-pattern join -> FILTER -> ORDER BY -> projection.
///
/// Join is a nested loop over the patterns, each resolved through the
/// graph's indexes with already-bound variables substituted. Patterns are
/// greedily reordered by bound-position count; this affects performance
/// only. Numeric filter comparisons promote integer/decimal/double to a
/// common floating comparison; ordering comparisons against non-numeric
/// terms drop the row. Duplicate rows are retained.
std::vector<Bindings> evaluate(const SelectQuery& q, const rdf::Graph& g);

/// Same pipeline, returning provenance alongside each projected row.
std::vector<Solution> evaluate_with_provenance(const SelectQuery& q, const rdf::Graph& g);

}  // namespace capd::sparql
