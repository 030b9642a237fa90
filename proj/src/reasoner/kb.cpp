#include "capd/reasoner/kb.hpp"

#include <algorithm>
#include <limits>

#include "capd/rdf/turtle.hpp"

namespace capd::reasoner {

using rdf::Bindings;
using rdf::PatternTerm;

namespace {

std::optional<Term> resolve(const PatternTerm& p, const Bindings& bound) {
  if (!p.is_variable())
    return p.term();
  auto it = bound.find(p.var());
  if (it != bound.end())
    return it->second;
  return std::nullopt;
}

bool bind(const PatternTerm& p, const Term& t, Bindings& bound, std::vector<std::string>& added) {
  if (!p.is_variable())
    return p.term() == t;
  auto it = bound.find(p.var());
  if (it != bound.end())
    return it->second == t;
  bound.emplace(p.var(), t);
  added.push_back(p.var());
  return true;
}

bool unify_triple(const TriplePattern& pat, const Triple& t, Bindings& bound,
                  std::vector<std::string>& added) {
  return bind(pat.subject, t.subject, bound, added) &&
         bind(pat.predicate, t.predicate, bound, added) &&
         bind(pat.object, t.object, bound, added);
}

// Instantiates a head template; nullopt when the result is not a valid
// triple (e.g. a literal ended up in subject position).
std::optional<Triple> instantiate(const TriplePattern& tmpl, const Bindings& bound) {
  auto s = resolve(tmpl.subject, bound);
  auto p = resolve(tmpl.predicate, bound);
  auto o = resolve(tmpl.object, bound);
  if (!s || !p || !o)
    return std::nullopt;
  if (s->is_literal() || !p->is_iri())
    return std::nullopt;
  return Triple(*s, *p, *o);
}

}  // namespace

int ProofNode::depth() const {
  int d = 0;
  for (const auto& p : premises)
    d = std::max(d, p.depth() + 1);
  return d;
}

std::string format_proof(const ProofNode& node, const rdf::PrefixMap& prefixes) {
  std::string out;
  auto walk = [&](auto&& self, const ProofNode& n, int indent) -> void {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    out += rdf::render_term(n.conclusion.subject, prefixes) + " " +
           rdf::render_term(n.conclusion.predicate, prefixes) + " " +
           rdf::render_term(n.conclusion.object, prefixes);
    out += n.asserted ? "   [asserted]" : "   [rule " + n.rule + "]";
    out += "\n";
    for (const auto& p : n.premises)
      self(self, p, indent + 1);
  };
  walk(walk, node, 0);
  return out;
}

KnowledgeBase::KnowledgeBase(std::vector<Rule> rules) {
  for (auto& r : rules)
    add_rule(std::move(r));
}

void KnowledgeBase::add_rule(Rule rule) {
  check_safe(rule);
  rules_.push_back(std::move(rule));
  // A late-registered rule must see every existing fact as fresh input.
  for (const Triple& t : asserted_.triples())
    unprocessed_.insert(t);
  for (const Triple& t : inferred_.triples())
    unprocessed_.insert(t);
}

bool KnowledgeBase::assert_fact(Triple t) {
  if (!asserted_.insert(t))
    return false;
  unprocessed_.insert(std::move(t));
  return true;
}

bool KnowledgeBase::record(Justification j) {
  auto& list = justifications_[j.conclusion];
  if (std::find(list.begin(), list.end(), j) != list.end())
    return false;
  list.push_back(std::move(j));
  return true;
}

std::set<Triple> KnowledgeBase::forward_chain() {
  std::set<Triple> newly_inferred;
  std::set<Triple> delta = std::move(unprocessed_);
  unprocessed_.clear();

  Graph view = snapshot();

  while (!delta.empty()) {
    std::set<Triple> next_delta;

    for (const Rule& rule : rules_) {
      // Semi-naive: at least one body pattern must match a delta triple.
      for (std::size_t seed = 0; seed < rule.body.size(); ++seed) {
        for (const Triple& d : delta) {
          Bindings bound;
          std::vector<std::string> seed_vars;
          if (!unify_triple(rule.body[seed], d, bound, seed_vars)) {
            for (const auto& v : seed_vars)
              bound.erase(v);
            continue;
          }

          // Join the remaining patterns against the full KB view.
          std::vector<std::size_t> rest;
          for (std::size_t i = 0; i < rule.body.size(); ++i)
            if (i != seed)
              rest.push_back(i);

          std::vector<Triple> premises(rule.body.size(),
                                       Triple(Term::iri("urn:x"), Term::iri("urn:x"),
                                              Term::iri("urn:x")));
          premises[seed] = d;

          auto emit = [&](const Bindings& row) {
            for (const auto& cmp : rule.builtins)
              if (!rdf::eval_comparison(cmp, row))
                return;
            for (const auto& guard : rule.iri_guards) {
              auto it = row.find(guard);
              if (it == row.end() || !it->second.is_iri())
                return;
            }
            for (const auto& tmpl : rule.head) {
              auto head = instantiate(tmpl, row);
              if (!head)
                continue;
              record({*head, rule.name, premises});
              if (!view.contains(*head)) {
                view.insert(*head);
                inferred_.insert(*head);
                next_delta.insert(*head);
                newly_inferred.insert(*head);
              } else if (!inferred_.contains(*head) && asserted_.contains(*head)) {
                // Derived a fact that was also asserted: track it as
                // inferred too so it can survive retraction of the
                // assertion.
                inferred_.insert(*head);
              }
            }
          };

          auto solve = [&](auto&& self, std::size_t k) -> void {
            if (k == rest.size()) {
              emit(bound);
              return;
            }
            const TriplePattern& pat = rule.body[rest[k]];
            auto s = resolve(pat.subject, bound);
            auto p = resolve(pat.predicate, bound);
            auto o = resolve(pat.object, bound);
            for (const Triple& t : view.match(s, p, o)) {
              std::vector<std::string> added;
              if (unify_triple(pat, t, bound, added)) {
                premises[rest[k]] = t;
                self(self, k + 1);
              }
              for (const auto& v : added)
                bound.erase(v);
            }
          };
          solve(solve, 0);

          for (const auto& v : seed_vars)
            bound.erase(v);
        }
      }
    }
    delta = std::move(next_delta);
  }
  return newly_inferred;
}

std::set<Triple> KnowledgeBase::retract(const Triple& t) {
  if (!asserted_.contains(t)) {
    if (inferred_.contains(t))
      throw KbError("cannot retract inferred triple " + t.to_string() +
                    "; retract its supporting premises instead");
    throw KbError("cannot retract triple not asserted: " + t.to_string());
  }
  asserted_.remove(t);
  unprocessed_.erase(t);

  // Mark-sweep from the remaining asserted roots: an inferred triple is
  // well-founded iff some justification has all premises well-founded.
  std::set<Triple> supported;
  for (const Triple& a : asserted_.triples())
    supported.insert(a);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [conclusion, justs] : justifications_) {
      if (supported.count(conclusion) || !inferred_.contains(conclusion))
        continue;
      for (const Justification& j : justs) {
        bool all = true;
        for (const Triple& premise : j.premises)
          if (!supported.count(premise)) {
            all = false;
            break;
          }
        if (all) {
          supported.insert(conclusion);
          changed = true;
          break;
        }
      }
    }
  }

  std::set<Triple> removed;
  for (const Triple& inf : inferred_.triples())
    if (!supported.count(inf))
      removed.insert(inf);
  for (const Triple& r : removed) {
    inferred_.remove(r);
    justifications_.erase(r);
    unprocessed_.erase(r);
  }
  if (!inferred_.contains(t)) {
    removed.insert(t);
    justifications_.erase(t);
  }

  // Drop justifications that cite a removed premise; their conclusions may
  // survive through other support.
  for (auto it = justifications_.begin(); it != justifications_.end();) {
    auto& list = it->second;
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](const Justification& j) {
                                for (const Triple& premise : j.premises)
                                  if (removed.count(premise) ||
                                      (premise == t && !contains(t)))
                                    return true;
                                return false;
                              }),
               list.end());
    if (list.empty())
      it = justifications_.erase(it);
    else
      ++it;
  }
  return removed;
}

Graph KnowledgeBase::snapshot() const {
  Graph g = asserted_;
  for (const Triple& t : inferred_.triples())
    g.insert(t);
  return g;
}

std::map<Triple, int> KnowledgeBase::support_depths() const {
  // Least-fixpoint depth: asserted = 0; inferred = 1 + min over
  // justifications of the max premise depth.
  std::map<Triple, int> depth;
  for (const Triple& a : asserted_.triples())
    depth[a] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [conclusion, justs] : justifications_) {
      if (!inferred_.contains(conclusion))
        continue;
      for (const Justification& j : justs) {
        int worst = 0;
        bool all = true;
        for (const Triple& premise : j.premises) {
          auto it = depth.find(premise);
          if (it == depth.end()) {
            all = false;
            break;
          }
          worst = std::max(worst, it->second);
        }
        if (!all)
          continue;
        int candidate = worst + 1;
        auto it = depth.find(conclusion);
        if (it == depth.end() || candidate < it->second) {
          depth[conclusion] = candidate;
          changed = true;
        }
      }
    }
  }
  return depth;
}

ProofNode KnowledgeBase::explain(const Triple& t) const {
  if (!contains(t))
    throw NotInKb("triple not in knowledge base: " + t.to_string());

  auto depth = support_depths();

  auto build = [&](auto&& self, const Triple& goal) -> ProofNode {
    if (asserted_.contains(goal))
      return ProofNode{goal, true, {}, {}};

    auto dit = depth.find(goal);
    auto jit = justifications_.find(goal);
    if (dit == depth.end() || jit == justifications_.end())
      throw NotInKb("no well-founded support recorded for " + goal.to_string());

    // Minimal-depth justification; ties by rule name, then premise text.
    const Justification* best = nullptr;
    int best_depth = std::numeric_limits<int>::max();
    auto premise_key = [](const Justification& j) {
      std::string key;
      for (const Triple& p : j.premises)
        key += p.to_string() + "\n";
      return key;
    };
    for (const Justification& j : jit->second) {
      int worst = 0;
      bool all = true;
      for (const Triple& premise : j.premises) {
        auto it = depth.find(premise);
        if (it == depth.end()) {
          all = false;
          break;
        }
        worst = std::max(worst, it->second);
      }
      if (!all)
        continue;
      int d = worst + 1;
      if (d < best_depth ||
          (d == best_depth && best &&
           (j.rule < best->rule || (j.rule == best->rule && premise_key(j) < premise_key(*best))))) {
        best = &j;
        best_depth = d;
      }
    }
    if (!best)
      throw NotInKb("no well-founded support recorded for " + goal.to_string());

    ProofNode node{goal, false, best->rule, {}};
    for (const Triple& premise : best->premises)
      node.premises.push_back(self(self, premise));
    return node;
  };
  return build(build, t);
}

}  // namespace capd::reasoner
