#pragma once

// Independent reference implementations the real modules are tested
// against. Everything here favors obviousness over speed: naive scans,
// exhaustive assignment enumeration, and from-scratch recomputation.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "capd/rdf/graph.hpp"
#include "capd/sparql/query.hpp"

namespace capd::test {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;

// ---------------------------------------------------------------------------
// Naive pattern matching: a full scan with a position-by-position filter.
inline std::vector<Triple> naive_match(const std::vector<Triple>& triples,
                                       const std::optional<Term>& s,
                                       const std::optional<Term>& p,
                                       const std::optional<Term>& o) {
  std::vector<Triple> out;
  for (const Triple& t : triples)
    if ((!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o))
      out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive-assignment SPARQL oracle. Enumerates, pattern by pattern,
// every graph triple as a candidate match, carrying a variable assignment;
// filters and projection are re-implemented from the spec text.

inline std::optional<double> oracle_numeric(const Term& t) {
  if (!t.is_literal())
    return std::nullopt;
  const std::string& dt = t.datatype();
  if (dt != std::string(vocab::kXsdInteger) && dt != std::string(vocab::kXsdDecimal) &&
      dt != std::string(vocab::kXsdDouble))
    return std::nullopt;
  const char* begin = t.value().c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    return std::nullopt;
  return v;
}

inline bool oracle_compare(const sparql::Comparison& cmp,
                           const std::map<std::string, Term>& row) {
  auto it = row.find(cmp.lhs_var);
  if (it == row.end())
    return false;
  Term lhs = it->second;
  std::optional<Term> rhs;
  if (cmp.rhs.is_variable()) {
    auto rit = row.find(cmp.rhs.var());
    if (rit == row.end())
      return false;
    rhs = rit->second;
  } else {
    rhs = cmp.rhs.term();
  }
  auto ln = oracle_numeric(lhs);
  auto rn = oracle_numeric(*rhs);
  using rdf::CmpOp;
  if (ln && rn) {
    switch (cmp.op) {
      case CmpOp::Ge: return *ln >= *rn;
      case CmpOp::Le: return *ln <= *rn;
      case CmpOp::Gt: return *ln > *rn;
      case CmpOp::Lt: return *ln < *rn;
      case CmpOp::Eq: return *ln == *rn;
      case CmpOp::Ne: return *ln != *rn;
    }
  }
  if (cmp.op == CmpOp::Eq)
    return lhs == *rhs;
  if (cmp.op == CmpOp::Ne)
    return lhs != *rhs;
  return false;
}

inline bool oracle_position_ok(const sparql::PatternTerm& pt, const Term& t,
                               std::map<std::string, Term>& assignment) {
  if (!pt.is_variable())
    return pt.term() == t;
  auto it = assignment.find(pt.var());
  if (it != assignment.end())
    return it->second == t;
  assignment.emplace(pt.var(), t);
  return true;
}

inline void oracle_extend(const sparql::SelectQuery& q, const std::vector<Triple>& triples,
                          std::size_t pattern_index, std::map<std::string, Term> assignment,
                          std::vector<std::map<std::string, Term>>& out) {
  if (pattern_index == q.patterns.size()) {
    for (const auto& filter : q.filters)
      for (const auto& cmp : filter.conjuncts)
        if (!oracle_compare(cmp, assignment))
          return;
    out.push_back(std::move(assignment));
    return;
  }
  const sparql::TriplePattern& pat = q.patterns[pattern_index];
  for (const Triple& t : triples) {
    std::map<std::string, Term> next = assignment;
    if (oracle_position_ok(pat.subject, t.subject, next) &&
        oracle_position_ok(pat.predicate, t.predicate, next) &&
        oracle_position_ok(pat.object, t.object, next))
      oracle_extend(q, triples, pattern_index + 1, std::move(next), out);
  }
}

/// Unordered projected rows by exhaustive enumeration.
inline std::vector<std::map<std::string, Term>> oracle_evaluate(const sparql::SelectQuery& q,
                                                                const Graph& g) {
  std::vector<Triple> triples(g.triples().begin(), g.triples().end());
  std::vector<std::map<std::string, Term>> assignments;
  oracle_extend(q, triples, 0, {}, assignments);
  std::vector<std::map<std::string, Term>> rows;
  for (const auto& a : assignments) {
    std::map<std::string, Term> row;
    for (const auto& item : q.projection) {
      auto it = a.find(item.source_var);
      if (it != a.end())
        row.emplace(item.output_name, it->second);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Canonical multiset representation for row comparison.
inline std::vector<std::string> row_multiset(const std::vector<std::map<std::string, Term>>& rows) {
  std::vector<std::string> keys;
  for (const auto& row : rows) {
    std::string key;
    for (const auto& [name, term] : row)
      key += name + "=" + term.to_string() + ";";
    keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

// ---------------------------------------------------------------------------
// Random data generators (std::mt19937_64, fixed seeds in the tests).

struct TermPool {
  std::vector<Term> subjects;
  std::vector<Term> predicates;
  std::vector<Term> objects;
};

inline TermPool small_term_pool() {
  TermPool pool;
  const std::string ns = "http://example.org/";
  for (const char* n : {"n0", "n1", "n2", "n3", "n4", "n5"})
    pool.subjects.push_back(Term::iri(ns + n));
  pool.subjects.push_back(Term::blank("u"));
  pool.subjects.push_back(Term::blank("v"));
  for (const char* p : {"p0", "p1", "p2", "p3"})
    pool.predicates.push_back(Term::iri(ns + p));
  pool.objects = pool.subjects;
  for (const char* lit : {"1", "2", "7"})
    pool.objects.push_back(Term::literal(lit, std::string(vocab::kXsdInteger)));
  for (const char* lit : {"0.5", "2.5"})
    pool.objects.push_back(Term::literal(lit, std::string(vocab::kXsdDecimal)));
  pool.objects.push_back(Term::literal("alpha"));
  pool.objects.push_back(Term::literal("beta", std::string(vocab::kXsdString), "en"));
  return pool;
}

inline Triple random_triple(std::mt19937_64& rng, const TermPool& pool) {
  auto pick = [&](const std::vector<Term>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  return Triple(pick(pool.subjects), pick(pool.predicates), pick(pool.objects));
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t max_triples) {
  const TermPool pool = small_term_pool();
  Graph g;
  std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_triples)(rng);
  for (std::size_t i = 0; i < n; ++i)
    g.insert(random_triple(rng, pool));
  return g;
}

/// Random query with <= 4 patterns and <= 2 filter conjuncts whose
/// projected variables all occur in patterns.
inline sparql::SelectQuery random_query(std::mt19937_64& rng) {
  const TermPool pool = small_term_pool();
  const std::vector<std::string> vars = {"a", "b", "c", "d", "e"};
  auto pick_var = [&]() {
    return vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)];
  };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  };
  auto pick = [&](const std::vector<Term>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };

  sparql::SelectQuery q;
  std::size_t n_patterns = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  for (std::size_t i = 0; i < n_patterns; ++i) {
    auto position = [&](const std::vector<Term>& terms, double var_prob) {
      if (chance(var_prob))
        return sparql::PatternTerm::variable(pick_var());
      return sparql::PatternTerm::constant(pick(terms));
    };
    q.patterns.push_back({position(pool.subjects, 0.7), position(pool.predicates, 0.4),
                          position(pool.objects, 0.7)});
  }

  std::set<std::string> bound;
  for (const auto& p : q.patterns)
    for (const auto& var : p.variables())
      bound.insert(var);
  if (bound.empty()) {
    // Ensure at least one variable so the query projects something.
    q.patterns[0].subject = sparql::PatternTerm::variable("a");
    bound.insert("a");
  }
  std::vector<std::string> bound_list(bound.begin(), bound.end());
  auto pick_bound = [&]() {
    return bound_list[std::uniform_int_distribution<std::size_t>(0, bound_list.size() - 1)(rng)];
  };

  std::size_t n_filters = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  if (n_filters > 0) {
    sparql::FilterExpr filter;
    for (std::size_t i = 0; i < n_filters; ++i) {
      rdf::Comparison cmp;
      cmp.lhs_var = pick_bound();
      cmp.op = static_cast<rdf::CmpOp>(std::uniform_int_distribution<int>(0, 5)(rng));
      if (chance(0.5))
        cmp.rhs = sparql::PatternTerm::variable(pick_bound());
      else
        cmp.rhs = sparql::PatternTerm::constant(
            chance(0.5) ? Term::literal("2", std::string(vocab::kXsdInteger))
                        : Term::literal("1.5", std::string(vocab::kXsdDecimal)));
      filter.conjuncts.push_back(std::move(cmp));
    }
    q.filters.push_back(std::move(filter));
  }

  std::size_t n_projected = std::uniform_int_distribution<std::size_t>(1, bound_list.size())(rng);
  for (std::size_t i = 0; i < n_projected; ++i) {
    std::string source = bound_list[i];
    if (chance(0.3))
      q.projection.push_back({source, "Alias_" + source});
    else
      q.projection.push_back({source, source});
  }
  if (chance(0.4))
    q.order_by.push_back(pick_bound());
  return q;
}

}  // namespace capd::test
