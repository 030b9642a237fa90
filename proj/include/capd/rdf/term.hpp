#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "capd/rdf/vocab.hpp"

namespace capd::rdf {

/// Raised when a term or triple violates the data model.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

enum class TermKind : std::uint8_t { Iri, BlankNode, Literal };

/// An RDF term: IRI, blank node, or literal.
///
/// Literals always carry a datatype; a language tag is allowed only on
/// string-typed literals. Equality is exact lexical comparison on all
/// fields, with no value-space canonicalization.
class Term {
 public:
  static Term iri(std::string value);
  static Term blank(std::string label);
  static Term literal(std::string lexical, std::string datatype = std::string(),
                      std::string language = std::string());

  /// Convenience: integer literal with xsd:integer datatype.
  static Term integer(long long v);
  /// Convenience: decimal literal formatted with shortest fixed notation.
  static Term decimal(double v);

  TermKind kind() const { return kind_; }
  bool is_iri() const { return kind_ == TermKind::Iri; }
  bool is_blank() const { return kind_ == TermKind::BlankNode; }
  bool is_literal() const { return kind_ == TermKind::Literal; }

  /// IRI value, blank label, or literal lexical form depending on kind.
  const std::string& value() const { return value_; }
  const std::string& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  /// Numeric value when this is an xsd:integer/decimal/double literal.
  std::optional<double> numeric_value() const;

  /// N-Triples-like rendering, used for diagnostics and deterministic ordering.
  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b) = default;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) = default;

 private:
  Term(TermKind kind, std::string value, std::string datatype, std::string language)
      : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  TermKind kind_;
  std::string value_;
  std::string datatype_;  // literals only
  std::string language_;  // literals only, empty when absent
};

/// Shortest fixed-notation rendering of a double ("7.5", "0.05", "100000").
std::string format_decimal(double v);

/// Parses an integer/decimal lexical form; nullopt if not a plain number.
std::optional<double> parse_numeric(std::string_view lexical);

struct TermHash {
  std::size_t operator()(const Term& t) const {
    std::size_t h = std::hash<std::string>{}(t.value());
    h = h * 1099511628211ULL ^ std::hash<std::string>{}(t.datatype());
    h = h * 1099511628211ULL ^ std::hash<std::string>{}(t.language());
    return h * 31 + static_cast<std::size_t>(t.kind());
  }
};

}  // namespace capd::rdf
