#include "capd/sparql/eval.hpp"

#include <algorithm>
#include <numeric>

namespace capd::sparql {

namespace {

using rdf::Term;
using rdf::Triple;

std::optional<Term> resolve(const PatternTerm& p, const Bindings& bound) {
  if (!p.is_variable())
    return p.term();
  auto it = bound.find(p.var());
  if (it != bound.end())
    return it->second;
  return std::nullopt;
}

// Binds one pattern position against a concrete term; false on conflict.
bool bind(const PatternTerm& p, const Term& t, Bindings& bound,
          std::vector<std::string>& added) {
  if (!p.is_variable())
    return p.term() == t;
  auto it = bound.find(p.var());
  if (it != bound.end())
    return it->second == t;
  bound.emplace(p.var(), t);
  added.push_back(p.var());
  return true;
}

int bound_positions(const TriplePattern& p, const Bindings& bound) {
  int n = 0;
  for (const PatternTerm* pt : {&p.subject, &p.predicate, &p.object})
    if (!pt->is_variable() || bound.count(pt->var()))
      ++n;
  return n;
}

struct JoinState {
  const rdf::Graph& g;
  const std::vector<TriplePattern>& patterns;
  std::vector<std::size_t> order;          // evaluation order of patterns
  Bindings bound;
  std::vector<Triple> matched_by_pattern;  // indexed by original pattern position
  std::vector<std::pair<Bindings, std::vector<Triple>>> out;
};

void join(JoinState& st, std::size_t depth) {
  if (depth == st.order.size()) {
    st.out.emplace_back(st.bound, st.matched_by_pattern);
    return;
  }
  // Greedy selectivity: among remaining patterns pick the one with the most
  // bound positions under the current bindings; stable on ties.
  std::size_t best = depth;
  int best_score = -1;
  for (std::size_t i = depth; i < st.order.size(); ++i) {
    int score = bound_positions(st.patterns[st.order[i]], st.bound);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  std::swap(st.order[depth], st.order[best]);
  const std::size_t pat_index = st.order[depth];
  const TriplePattern& pat = st.patterns[pat_index];

  auto s = resolve(pat.subject, st.bound);
  auto p = resolve(pat.predicate, st.bound);
  auto o = resolve(pat.object, st.bound);
  for (const Triple& t : st.g.match(s, p, o)) {
    std::vector<std::string> added;
    if (bind(pat.subject, t.subject, st.bound, added) &&
        bind(pat.predicate, t.predicate, st.bound, added) &&
        bind(pat.object, t.object, st.bound, added)) {
      st.matched_by_pattern[pat_index] = t;
      join(st, depth + 1);
    }
    for (const auto& v : added)
      st.bound.erase(v);
  }
}

bool passes_filters(const SelectQuery& q, const Bindings& row) {
  for (const auto& filter : q.filters)
    for (const auto& cmp : filter.conjuncts)
      if (!rdf::eval_comparison(cmp, row))
        return false;
  return true;
}

// Numeric ascending when both values are numeric, else by rendered form.
int compare_terms(const Term& a, const Term& b) {
  auto na = a.numeric_value();
  auto nb = b.numeric_value();
  if (na && nb) {
    if (*na < *nb) return -1;
    if (*na > *nb) return 1;
    return 0;
  }
  std::string sa = a.to_string(), sb = b.to_string();
  if (sa < sb) return -1;
  if (sa > sb) return 1;
  return 0;
}

void order_solutions(const SelectQuery& q,
                     std::vector<std::pair<Bindings, std::vector<Triple>>>& rows) {
  if (q.order_by.empty())
    return;
  // Tie-break columns: all remaining bound variables in name order.
  std::vector<std::string> tiebreak;
  if (!rows.empty()) {
    for (const auto& [name, term] : rows.front().first)
      if (std::find(q.order_by.begin(), q.order_by.end(), name) == q.order_by.end())
        tiebreak.push_back(name);
  }
  auto value = [](const Bindings& b, const std::string& v) -> const Term* {
    auto it = b.find(v);
    return it == b.end() ? nullptr : &it->second;
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& ra, const auto& rb) {
    for (const auto& v : q.order_by) {
      const Term* a = value(ra.first, v);
      const Term* b = value(rb.first, v);
      if (!a || !b)
        continue;
      int c = compare_terms(*a, *b);
      if (c != 0)
        return c < 0;
    }
    for (const auto& v : tiebreak) {
      const Term* a = value(ra.first, v);
      const Term* b = value(rb.first, v);
      if (!a || !b)
        continue;
      int c = compare_terms(*a, *b);
      if (c != 0)
        return c < 0;
    }
    return false;
  });
}

std::vector<Solution> run(const SelectQuery& q, const rdf::Graph& g) {
  JoinState st{g, q.patterns, {}, {}, {}, {}};
  st.order.resize(q.patterns.size());
  std::iota(st.order.begin(), st.order.end(), 0);
  st.matched_by_pattern.resize(q.patterns.size(),
                               Triple(Term::iri("urn:none"), Term::iri("urn:none"),
                                      Term::iri("urn:none")));
  join(st, 0);

  std::vector<std::pair<Bindings, std::vector<Triple>>> rows;
  for (auto& [bindings, matched] : st.out)
    if (passes_filters(q, bindings))
      rows.emplace_back(std::move(bindings), std::move(matched));

  order_solutions(q, rows);

  std::vector<Solution> solutions;
  solutions.reserve(rows.size());
  for (auto& [full, matched] : rows) {
    Solution s;
    for (const auto& item : q.projection) {
      auto it = full.find(item.source_var);
      if (it != full.end())
        s.row.emplace(item.output_name, it->second);
    }
    s.full = std::move(full);
    s.matched = std::move(matched);
    solutions.push_back(std::move(s));
  }
  return solutions;
}

}  // namespace

std::vector<Bindings> evaluate(const SelectQuery& q, const rdf::Graph& g) {
  std::vector<Bindings> out;
  for (auto& s : run(q, g))
    out.push_back(std::move(s.row));
  return out;
}

std::vector<Solution> evaluate_with_provenance(const SelectQuery& q, const rdf::Graph& g) {
  return run(q, g);
}

}  // namespace capd::sparql
