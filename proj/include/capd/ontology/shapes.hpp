#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capd/ontology/schema.hpp"

namespace capd::ontology {

enum class ConstraintKind {
  MinCount,      // at least `count` values for `property`
  MaxCount,      // at most `count` values
  Datatype,      // every value is a literal of `datatype`
  ClassType,     // every value is typed (a subclass of) `class_iri`
  NumericRange,  // every value is a numeric literal within [min, max]
  RangeOrder,    // the value of `property` <= the value of `property2`
};

std::string constraint_name(ConstraintKind kind);

struct Constraint {
  ConstraintKind kind;
  std::string property;   // IRI
  std::string property2;  // RangeOrder only: the upper-bound property
  int count = 0;
  std::string datatype;
  std::string class_iri;
  std::optional<double> min;
  std::optional<double> max;
};

struct Shape {
  std::string id;
  std::string target_class;  // IRI
  std::vector<Constraint> constraints;
};

struct Violation {
  rdf::Term focus;
  std::string shape;
  std::string constraint;
  std::string message;

  friend bool operator==(const Violation& a, const Violation& b) = default;
};

/// The shapes every knowledge graph in this artifact is expected to meet:
/// observations carry exactly one time and result, results exactly one
/// numeric value, bandwidth attacks an ordered numeric range, plans at
/// least one protection program, and programs exactly one string code.
std::vector<Shape> default_shapes();

/// Checks every focus node (instances of each shape's target class or a
/// subclass of it) against the shape's constraints. One violation per
/// (focus, failed constraint), deterministically ordered. Equivalent
/// property spellings declared by the schema count toward the same
/// property.
std::vector<Violation> validate(const rdf::Graph& data, const SchemaGraph& schema,
                                const std::vector<Shape>& shapes);

/// Loads shapes from a JSON document (see docs/formats.md).
std::vector<Shape> shapes_from_json(const std::string& text);

}  // namespace capd::ontology
