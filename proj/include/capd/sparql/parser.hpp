#pragma once

#include <string_view>

#include "capd/rdf/turtle.hpp"
#include "capd/sparql/query.hpp"

namespace capd::sparql {

using rdf::ParseError;

/// Parses the SPARQL subset: PREFIX headers, SELECT with plain and aliased
/// variables, a WHERE block of triple patterns (`;`/`,` abbreviations, the
/// `a` keyword) and FILTER conjunctions, plus an optional ORDER BY.
///
/// Rejects unsupported SPARQL (OPTIONAL, UNION, LIMIT, DISTINCT,
/// aggregates) at parse time. Enforces that projected, aliased, and
/// ORDER BY variables occur in the graph pattern and that alias names do
/// not collide with pattern variables.
SelectQuery parse_query(std::string_view text);

}  // namespace capd::sparql
