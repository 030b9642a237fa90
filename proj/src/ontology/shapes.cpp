#include "capd/ontology/shapes.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace capd::ontology {

using rdf::Term;
using rdf::Triple;
namespace v = capd::vocab;

std::string constraint_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::MinCount: return "min_count";
    case ConstraintKind::MaxCount: return "max_count";
    case ConstraintKind::Datatype: return "datatype";
    case ConstraintKind::ClassType: return "class";
    case ConstraintKind::NumericRange:
    case ConstraintKind::RangeOrder: return "numeric_range";
  }
  return "?";
}

std::vector<Shape> default_shapes() {
  auto min1 = [](const std::string& p) {
    return Constraint{ConstraintKind::MinCount, p, {}, 1, {}, {}, {}, {}};
  };
  auto max1 = [](const std::string& p) {
    return Constraint{ConstraintKind::MaxCount, p, {}, 1, {}, {}, {}, {}};
  };
  auto numeric = [](const std::string& p) {
    return Constraint{ConstraintKind::NumericRange, p, {}, 0, {}, {}, {}, {}};
  };

  std::vector<Shape> shapes;
  shapes.push_back({"BandwidthObservationShape",
                    v::bf("BandwidthObservation"),
                    {min1(v::sosa("phenomenonTime")), max1(v::sosa("phenomenonTime")),
                     min1(v::bf("hasResult")), max1(v::bf("hasResult"))}});
  shapes.push_back({"ResultShape",
                    v::bf("Result"),
                    {min1(v::bf("value")), max1(v::bf("value")), numeric(v::bf("value"))}});
  shapes.push_back({"BandwidthAttackShape",
                    v::bf("BandwidthAttack"),
                    {min1(v::bf("lowRange")), max1(v::bf("lowRange")),
                     min1(v::bf("highRange")), max1(v::bf("highRange")),
                     numeric(v::bf("lowRange")), numeric(v::bf("highRange")),
                     Constraint{ConstraintKind::RangeOrder, v::bf("lowRange"),
                                v::bf("highRange"), 0, {}, {}, {}, {}}}});
  shapes.push_back({"MitigationPlanShape",
                    v::bf("MitigationPlan"),
                    {min1(v::bf("hasProtectionProgram"))}});
  shapes.push_back({"ProtectionProgramShape",
                    v::bf("ProtectionProgram"),
                    {min1(v::bf("code")), max1(v::bf("code")),
                     Constraint{ConstraintKind::Datatype, v::bf("code"), {}, 0,
                                std::string(v::kXsdString), {}, {}, {}}}});
  return shapes;
}

namespace {

std::vector<Term> property_values(const rdf::Graph& data, const SchemaGraph& schema,
                                  const Term& focus, const std::string& property) {
  std::set<Term> values;
  for (const Term& p : schema.equivalents(Term::iri(property)))
    for (const Triple& t : data.match(focus, p, std::nullopt))
      values.insert(t.object);
  return {values.begin(), values.end()};
}

std::vector<Term> focus_nodes(const rdf::Graph& data, const SchemaGraph& schema,
                              const std::string& target_class) {
  const Term type = Term::iri(v::kRdfType);
  const Term target = Term::iri(target_class);
  std::set<Term> focus;
  for (const Triple& t : data.match(std::nullopt, type, std::nullopt))
    if (t.object.is_iri() && schema.is_subclass_of(t.object, target))
      focus.insert(t.subject);
  // Subclass edges asserted in the data graph itself also count.
  for (const Triple& t : data.match(std::nullopt, type, std::nullopt)) {
    if (focus.count(t.subject))
      continue;
    std::set<Term> seen{t.object};
    std::vector<Term> frontier{t.object};
    const Term sub = Term::iri(v::kSubClassOf);
    while (!frontier.empty()) {
      Term cur = frontier.back();
      frontier.pop_back();
      if (cur == target) {
        focus.insert(t.subject);
        break;
      }
      for (const Triple& e : data.match(cur, sub, std::nullopt))
        if (seen.insert(e.object).second)
          frontier.push_back(e.object);
    }
  }
  return {focus.begin(), focus.end()};
}

std::string short_name(const std::string& iri) {
  auto pos = iri.find_last_of("#/");
  return pos == std::string::npos ? iri : iri.substr(pos + 1);
}

void check_constraint(const rdf::Graph& data, const SchemaGraph& schema, const Shape& shape,
                      const Constraint& c, const Term& focus, std::vector<Violation>& out) {
  const std::string focus_str = focus.to_string();
  const std::string prop = short_name(c.property);
  auto values = property_values(data, schema, focus, c.property);

  switch (c.kind) {
    case ConstraintKind::MinCount:
      if (static_cast<int>(values.size()) < c.count)
        out.push_back({focus, shape.id, "min_count",
                       focus_str + " has " + std::to_string(values.size()) + " value(s) for " +
                           prop + ", expected at least " + std::to_string(c.count)});
      break;
    case ConstraintKind::MaxCount:
      if (static_cast<int>(values.size()) > c.count)
        out.push_back({focus, shape.id, "max_count",
                       focus_str + " has " + std::to_string(values.size()) + " value(s) for " +
                           prop + ", expected at most " + std::to_string(c.count)});
      break;
    case ConstraintKind::Datatype:
      for (const Term& val : values) {
        if (!val.is_literal() || val.datatype() != c.datatype) {
          out.push_back({focus, shape.id, "datatype",
                         focus_str + " value " + val.to_string() + " for " + prop +
                             " is not a literal of datatype <" + c.datatype + ">"});
          break;
        }
      }
      break;
    case ConstraintKind::ClassType:
      for (const Term& val : values) {
        bool ok = false;
        if (!val.is_literal())
          for (const Triple& t : data.match(val, Term::iri(v::kRdfType), std::nullopt))
            if (t.object.is_iri() &&
                schema.is_subclass_of(t.object, Term::iri(c.class_iri))) {
              ok = true;
              break;
            }
        if (!ok) {
          out.push_back({focus, shape.id, "class",
                         focus_str + " value " + val.to_string() + " for " + prop +
                             " is not an instance of " + short_name(c.class_iri)});
          break;
        }
      }
      break;
    case ConstraintKind::NumericRange:
      for (const Term& val : values) {
        auto num = val.numeric_value();
        bool ok = num && (!c.min || *num >= *c.min) && (!c.max || *num <= *c.max);
        if (!ok) {
          out.push_back({focus, shape.id, "numeric_range",
                         focus_str + " value " + val.to_string() + " for " + prop +
                             (num ? " is out of range" : " is not numeric")});
          break;
        }
      }
      break;
    case ConstraintKind::RangeOrder: {
      auto highs = property_values(data, schema, focus, c.property2);
      if (values.size() != 1 || highs.size() != 1)
        break;  // cardinality problems are reported by min/max constraints
      auto lo = values.front().numeric_value();
      auto hi = highs.front().numeric_value();
      if (lo && hi && *lo > *hi)
        out.push_back({focus, shape.id, "numeric_range",
                       focus_str + " ordering violated: " + prop + " " +
                           rdf::format_decimal(*lo) + " > " + short_name(c.property2) + " " +
                           rdf::format_decimal(*hi)});
      break;
    }
  }
}

}  // namespace

std::vector<Violation> validate(const rdf::Graph& data, const SchemaGraph& schema,
                                const std::vector<Shape>& shapes) {
  std::vector<Violation> out;
  for (const Shape& shape : shapes)
    for (const Term& focus : focus_nodes(data, schema, shape.target_class))
      for (const Constraint& c : shape.constraints)
        check_constraint(data, schema, shape, c, focus, out);
  return out;
}

std::vector<Shape> shapes_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<Shape> shapes;
  for (const auto& js : doc.at("shapes")) {
    Shape shape;
    shape.id = js.at("id").get<std::string>();
    shape.target_class = js.at("target_class").get<std::string>();
    for (const auto& jc : js.at("constraints")) {
      Constraint c{};
      std::string kind = jc.at("kind").get<std::string>();
      if (kind == "min_count") {
        c.kind = ConstraintKind::MinCount;
        c.count = jc.at("count").get<int>();
      } else if (kind == "max_count") {
        c.kind = ConstraintKind::MaxCount;
        c.count = jc.at("count").get<int>();
      } else if (kind == "datatype") {
        c.kind = ConstraintKind::Datatype;
        c.datatype = jc.at("datatype").get<std::string>();
      } else if (kind == "class") {
        c.kind = ConstraintKind::ClassType;
        c.class_iri = jc.at("class").get<std::string>();
      } else if (kind == "numeric_range") {
        c.kind = ConstraintKind::NumericRange;
        if (jc.contains("min")) c.min = jc.at("min").get<double>();
        if (jc.contains("max")) c.max = jc.at("max").get<double>();
      } else if (kind == "range_order") {
        c.kind = ConstraintKind::RangeOrder;
        c.property2 = jc.at("high_property").get<std::string>();
      } else {
        throw std::runtime_error("unknown shape constraint kind: " + kind);
      }
      c.property = jc.at("property").get<std::string>();
      shape.constraints.push_back(std::move(c));
    }
    shapes.push_back(std::move(shape));
  }
  return shapes;
}

}  // namespace capd::ontology
