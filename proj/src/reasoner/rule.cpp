#include "capd/reasoner/rule.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace capd::reasoner {

using rdf::PatternTerm;
using rdf::Term;
namespace v = capd::vocab;

void check_safe(const Rule& rule) {
  std::set<std::string> body_vars;
  for (const auto& p : rule.body)
    for (const auto& var : p.variables())
      body_vars.insert(var);
  for (const auto& p : rule.head)
    for (const auto& var : p.variables())
      if (!body_vars.count(var))
        throw RuleError("rule '" + rule.name + "' is unsafe: head variable ?" + var +
                        " does not occur in any body pattern");
  for (const auto& cmp : rule.builtins) {
    if (!body_vars.count(cmp.lhs_var))
      throw RuleError("rule '" + rule.name + "' is unsafe: builtin variable ?" + cmp.lhs_var +
                      " does not occur in any body pattern");
    if (cmp.rhs.is_variable() && !body_vars.count(cmp.rhs.var()))
      throw RuleError("rule '" + rule.name + "' is unsafe: builtin variable ?" + cmp.rhs.var() +
                      " does not occur in any body pattern");
  }
  for (const auto& var : rule.iri_guards)
    if (!body_vars.count(var))
      throw RuleError("rule '" + rule.name + "' is unsafe: isIRI variable ?" + var +
                      " does not occur in any body pattern");
  if (rule.head.empty())
    throw RuleError("rule '" + rule.name + "' has no head");
}

std::vector<Rule> builtin_rules() {
  auto var = [](const char* n) { return PatternTerm::variable(n); };
  auto iri = [](const std::string& s) { return PatternTerm::constant(Term::iri(s)); };
  const auto type = iri(v::kRdfType);
  const auto sub = iri(v::kSubClassOf);

  Rule r1{"R1-subclass-transitivity",
          {{var("a"), sub, var("b")}, {var("b"), sub, var("c")}},
          {},
          {},
          {{var("a"), sub, var("c")}}};
  Rule r2{"R2-type-propagation",
          {{var("x"), type, var("c")}, {var("c"), sub, var("d")}},
          {},
          {},
          {{var("x"), type, var("d")}}};
  Rule r3{"R3-domain",
          {{var("x"), var("p"), var("y")}, {var("p"), iri(v::kDomain), var("c")}},
          {},
          {},
          {{var("x"), type, var("c")}}};
  Rule r4{"R4-range",
          {{var("x"), var("p"), var("y")}, {var("p"), iri(v::kRange), var("c")}},
          {},
          {"y"},
          {{var("y"), type, var("c")}}};
  return {r1, r2, r3, r4};
}

namespace {

// Splits on top-level commas (term whitespace never contains commas).
std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

PatternTerm parse_pattern_term(const std::string& tok, const rdf::PrefixMap& prefixes,
                               const std::string& rule_name) {
  if (tok.empty())
    throw RuleError("rule '" + rule_name + "': empty term");
  if (tok[0] == '?')
    return PatternTerm::variable(tok.substr(1));
  if (tok == "a")
    return PatternTerm::constant(Term::iri(v::kRdfType));
  if (tok[0] == '<' && tok.back() == '>')
    return PatternTerm::constant(Term::iri(tok.substr(1, tok.size() - 2)));
  if (tok[0] == '"') {
    auto close = tok.rfind('"');
    if (close == 0)
      throw RuleError("rule '" + rule_name + "': unterminated string " + tok);
    std::string lexical = tok.substr(1, close - 1);
    std::string rest = tok.substr(close + 1);
    if (rest.rfind("^^", 0) == 0) {
      PatternTerm dt = parse_pattern_term(rest.substr(2), prefixes, rule_name);
      return PatternTerm::constant(Term::literal(lexical, dt.term().value()));
    }
    if (!rest.empty() && rest[0] == '@')
      return PatternTerm::constant(
          Term::literal(lexical, std::string(v::kXsdString), rest.substr(1)));
    return PatternTerm::constant(Term::literal(lexical));
  }
  if (tok[0] == '+' || tok[0] == '-' || std::isdigit(static_cast<unsigned char>(tok[0]))) {
    bool dot = tok.find('.') != std::string::npos;
    return PatternTerm::constant(Term::literal(
        tok, dot ? std::string(v::kXsdDecimal) : std::string(v::kXsdInteger)));
  }
  auto colon = tok.find(':');
  if (colon == std::string::npos)
    throw RuleError("rule '" + rule_name + "': cannot parse term '" + tok + "'");
  auto it = prefixes.find(tok.substr(0, colon));
  if (it == prefixes.end())
    throw RuleError("rule '" + rule_name + "': unknown prefix '" + tok.substr(0, colon) + "'");
  return PatternTerm::constant(Term::iri(it->second + tok.substr(colon + 1)));
}

// A body/head element: triple pattern, comparison, or isIRI guard.
void parse_element(const std::string& element, const rdf::PrefixMap& prefixes, Rule& rule,
                   bool in_head) {
  std::string text = trim(element);
  if (text.empty())
    throw RuleError("rule '" + rule.name + "': empty clause");

  if (!in_head && text.rfind("isIRI(", 0) == 0 && text.back() == ')') {
    std::string var = trim(text.substr(6, text.size() - 7));
    if (var.empty() || var[0] != '?')
      throw RuleError("rule '" + rule.name + "': isIRI takes a variable");
    rule.iri_guards.push_back(var.substr(1));
    return;
  }

  std::istringstream in(text);
  std::string s, p, o, extra;
  in >> s >> p >> o;
  if (o.empty())
    throw RuleError("rule '" + rule.name + "': expected 's p o' or '?v op operand' in '" +
                    text + "'");
  if (in >> extra)
    throw RuleError("rule '" + rule.name + "': trailing tokens in '" + text + "'");

  // `?var op operand` with a whitespace-separated operator is a comparison.
  static const std::map<std::string, rdf::CmpOp> kOps = {
      {">=", rdf::CmpOp::Ge}, {"<=", rdf::CmpOp::Le}, {"!=", rdf::CmpOp::Ne},
      {">", rdf::CmpOp::Gt},  {"<", rdf::CmpOp::Lt},  {"=", rdf::CmpOp::Eq}};
  if (auto op_it = kOps.find(p); op_it != kOps.end()) {
    if (in_head)
      throw RuleError("rule '" + rule.name + "': comparisons are not allowed in the head");
    if (s.empty() || s[0] != '?')
      throw RuleError("rule '" + rule.name + "': comparison left side must be a variable");
    Comparison cmp;
    cmp.lhs_var = s.substr(1);
    cmp.op = op_it->second;
    cmp.rhs = parse_pattern_term(o, prefixes, rule.name);
    rule.builtins.push_back(std::move(cmp));
    return;
  }

  TriplePattern pattern{parse_pattern_term(s, prefixes, rule.name),
                        parse_pattern_term(p, prefixes, rule.name),
                        parse_pattern_term(o, prefixes, rule.name)};
  if (in_head)
    rule.head.push_back(std::move(pattern));
  else
    rule.body.push_back(std::move(pattern));
}

}  // namespace

Rule parse_rule(const std::string& line, const rdf::PrefixMap& prefixes) {
  auto colon = line.find(':');
  auto arrow = line.find("=>");
  if (colon == std::string::npos || arrow == std::string::npos || colon > arrow)
    throw RuleError("rule syntax is 'name: body, ... => head, ...': " + line);
  Rule rule;
  rule.name = trim(line.substr(0, colon));
  if (rule.name.empty())
    throw RuleError("rule has no name: " + line);
  for (const auto& clause : split_commas(line.substr(colon + 1, arrow - colon - 1)))
    parse_element(clause, prefixes, rule, false);
  for (const auto& clause : split_commas(line.substr(arrow + 2)))
    parse_element(clause, prefixes, rule, true);
  check_safe(rule);
  return rule;
}

std::vector<Rule> parse_rules(const std::string& text, const rdf::PrefixMap& prefixes) {
  std::vector<Rule> rules;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    rules.push_back(parse_rule(t, prefixes));
  }
  return rules;
}

}  // namespace capd::reasoner
