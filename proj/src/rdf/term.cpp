#include "capd/rdf/term.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace capd::rdf {

Term Term::iri(std::string value) {
  if (value.empty())
    throw ModelError("IRI must be non-empty");
  for (char c : value)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
      throw ModelError("IRI contains whitespace: <" + value + ">");
  return Term(TermKind::Iri, std::move(value), {}, {});
}

Term Term::blank(std::string label) {
  if (label.empty())
    throw ModelError("blank node label must be non-empty");
  return Term(TermKind::BlankNode, std::move(label), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype, std::string language) {
  if (datatype.empty())
    datatype = vocab::kXsdString;
  if (!language.empty() && datatype != vocab::kXsdString)
    throw ModelError("language tag requires the string datatype, got <" + datatype + ">");
  return Term(TermKind::Literal, std::move(lexical), std::move(datatype), std::move(language));
}

Term Term::integer(long long v) {
  return literal(std::to_string(v), vocab::kXsdInteger);
}

Term Term::decimal(double v) {
  return literal(format_decimal(v), vocab::kXsdDecimal);
}

std::optional<double> Term::numeric_value() const {
  if (kind_ != TermKind::Literal)
    return std::nullopt;
  if (datatype_ != vocab::kXsdInteger && datatype_ != vocab::kXsdDecimal &&
      datatype_ != vocab::kXsdDouble)
    return std::nullopt;
  return parse_numeric(value_);
}

std::string Term::to_string() const {
  switch (kind_) {
    case TermKind::Iri:
      return "<" + value_ + ">";
    case TermKind::BlankNode:
      return "_:" + value_;
    case TermKind::Literal: {
      std::string out = "\"";
      for (char c : value_) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\r': out += "\\r"; break;
          case '\t': out += "\\t"; break;
          default: out += c;
        }
      }
      out += '"';
      if (!language_.empty())
        out += "@" + language_;
      else if (datatype_ != vocab::kXsdString)
        out += "^^<" + datatype_ + ">";
      return out;
    }
  }
  return {};
}

std::string format_decimal(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_numeric(std::string_view lexical) {
  if (lexical.empty())
    return std::nullopt;
  if (lexical.front() == '+')  // from_chars rejects a leading plus
    lexical.remove_prefix(1);
  if (lexical.empty())
    return std::nullopt;
  const char* first = lexical.data();
  const char* last = first + lexical.size();
  double out = 0;
  auto res = std::from_chars(first, last, out, std::chars_format::general);
  if (res.ec != std::errc() || res.ptr != last)
    return std::nullopt;
  return out;
}

}  // namespace capd::rdf
