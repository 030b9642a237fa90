#pragma once

#include <string>
#include <string_view>

#include "capd/rdf/graph.hpp"

namespace capd::rdf {

/// Syntax or prefix-resolution failure, with 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(message + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the Turtle subset: @prefix directives, <IRI>s, prefixed names,
/// the `a` keyword, `;` and `,` lists, string literals with ^^datatype or
/// @lang, bare integers/decimals, `[]` and `_:label` blank nodes.
/// Blank labels are renamed _:b0, _:b1, ... in first-seen order.
Graph parse_turtle(std::string_view text, const PrefixMap& base_prefixes = default_prefixes());

/// Deterministic serialization: prefix directives first, then statement
/// blocks sorted by subject, predicates sorted within subject, objects
/// within predicate. Serializing the same graph twice is byte-identical.
std::string serialize_turtle(const Graph& g);

/// Turtle rendering of a single term, compacting IRIs against the prefix
/// map where possible.
std::string render_term(const Term& t, const PrefixMap& prefixes);

}  // namespace capd::rdf
