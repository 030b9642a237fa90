#include "capd/rdf/graph.hpp"

#include <algorithm>
#include <map>

namespace capd::rdf {

Triple::Triple(Term s, Term p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (subject.is_literal())
    throw ModelError("triple subject must not be a literal: " + subject.to_string());
  if (!predicate.is_iri())
    throw ModelError("triple predicate must be an IRI: " + predicate.to_string());
}

std::string Triple::to_string() const {
  return subject.to_string() + " " + predicate.to_string() + " " + object.to_string() + " .";
}

PrefixMap default_prefixes() {
  return {
      {"bf", std::string(vocab::kBf)},
      {"sosa", std::string(vocab::kSosa)},
      {"stix", std::string(vocab::kStix)},
      {"rdf", std::string(vocab::kRdf)},
      {"rdfs", std::string(vocab::kRdfs)},
      {"xsd", std::string(vocab::kXsd)},
  };
}

bool Graph::insert(Triple t) {
  auto [it, added] = spo_.insert(t);
  if (!added)
    return false;
  pos_.insert(t);
  osp_.insert(std::move(t));
  return true;
}

bool Graph::remove(const Triple& t) {
  if (spo_.erase(t) == 0)
    return false;
  pos_.erase(t);
  osp_.erase(t);
  return true;
}

std::vector<Triple> Graph::match(const std::optional<Term>& s,
                                 const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  // Patterns no stored triple can satisfy.
  if ((s && s->is_literal()) || (p && !p->is_iri()))
    return out;
  // Sentinel terms give the smallest possible value in unbound positions,
  // so lower_bound lands at the start of the bound-prefix range.
  static const Term kMin = Term::iri("\x01");

  if (s) {
    if (p && o) {
      Triple probe(*s, *p, *o);
      if (spo_.count(probe))
        out.push_back(probe);
      return out;
    }
    if (!p && o) {
      // s and o bound: OSP has (o, s) as its prefix.
      auto lo = osp_.lower_bound(Triple(*s, kMin, *o));
      for (auto it = lo; it != osp_.end() && it->object == *o && it->subject == *s; ++it)
        out.push_back(*it);
      return out;
    }
    // s bound, p maybe bound, o unbound: SPO prefix scan.
    auto lo = spo_.lower_bound(Triple(*s, p ? *p : kMin, kMin));
    for (auto it = lo; it != spo_.end() && it->subject == *s; ++it)
      if (!p || it->predicate == *p)
        out.push_back(*it);
      else if (it->predicate > *p)
        break;
    return out;
  }
  if (p) {
    // POS prefix scan over (p, o?).
    auto lo = pos_.lower_bound(Triple(kMin, *p, o ? *o : kMin));
    for (auto it = lo; it != pos_.end() && it->predicate == *p; ++it) {
      if (o && it->object != *o)
        break;
      out.push_back(*it);
    }
    return out;
  }
  if (o) {
    auto lo = osp_.lower_bound(Triple(kMin, kMin, *o));
    for (auto it = lo; it != osp_.end() && it->object == *o; ++it)
      out.push_back(*it);
    return out;
  }
  out.assign(spo_.begin(), spo_.end());
  return out;
}

void Graph::merge(const Graph& other) {
  for (const auto& t : other.triples())
    insert(t);
  for (const auto& [k, v] : other.prefixes())
    prefixes_[k] = v;
}

std::vector<Term> Graph::all_terms() const {
  std::set<Term> seen;
  for (const auto& t : spo_) {
    seen.insert(t.subject);
    seen.insert(t.predicate);
    seen.insert(t.object);
  }
  return {seen.begin(), seen.end()};
}

namespace {

Term rename_blank(const Term& t, const std::map<std::string, std::string>& m) {
  return t.is_blank() ? Term::blank(m.at(t.value())) : t;
}

// Assigns each blank label of a to a distinct label of b, pruning as soon as
// a fully-mapped triple has no counterpart.
bool assign_labels(const std::vector<std::string>& la, std::size_t i,
                   const std::vector<std::string>& lb, std::vector<bool>& used,
                   std::map<std::string, std::string>& m,
                   const std::vector<Triple>& blank_triples, const Graph& b) {
  if (i == la.size())
    return true;
  for (std::size_t j = 0; j < lb.size(); ++j) {
    if (used[j])
      continue;
    used[j] = true;
    m[la[i]] = lb[j];
    bool ok = true;
    for (const Triple& t : blank_triples) {
      bool ready = (!t.subject.is_blank() || m.count(t.subject.value())) &&
                   (!t.object.is_blank() || m.count(t.object.value()));
      if (ready && !b.contains(Triple(rename_blank(t.subject, m), t.predicate,
                                      rename_blank(t.object, m)))) {
        ok = false;
        break;
      }
    }
    if (ok && assign_labels(la, i + 1, lb, used, m, blank_triples, b))
      return true;
    m.erase(la[i]);
    used[j] = false;
  }
  return false;
}

std::vector<std::string> blank_labels(const Graph& g) {
  std::set<std::string> labels;
  for (const auto& t : g.triples()) {
    if (t.subject.is_blank())
      labels.insert(t.subject.value());
    if (t.object.is_blank())
      labels.insert(t.object.value());
  }
  return {labels.begin(), labels.end()};
}

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size())
    return false;
  std::vector<Triple> blank_triples;
  for (const auto& t : a.triples()) {
    if (t.subject.is_blank() || t.object.is_blank())
      blank_triples.push_back(t);
    else if (!b.contains(t))
      return false;
  }
  auto la = blank_labels(a);
  auto lb = blank_labels(b);
  if (la.size() != lb.size())
    return false;
  std::vector<bool> used(lb.size(), false);
  std::map<std::string, std::string> m;
  return assign_labels(la, 0, lb, used, m, blank_triples, b);
}

}  // namespace capd::rdf
