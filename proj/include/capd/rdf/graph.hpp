#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "capd/rdf/term.hpp"

namespace capd::rdf {

/// An RDF statement. Subject is an IRI or blank node, predicate an IRI.
struct Triple {
  Term subject;
  Term predicate;
  Term object;

  Triple(Term s, Term p, Term o);

  std::string to_string() const;

  friend bool operator==(const Triple& a, const Triple& b) = default;
  friend std::strong_ordering operator<=>(const Triple& a, const Triple& b) = default;
};

using PrefixMap = std::map<std::string, std::string>;

/// Prefixes every graph starts with: the three battlefield namespaces plus
/// rdf/rdfs/xsd for the schema vocabulary.
PrefixMap default_prefixes();

/// In-memory triple set with SPO, POS, and OSP orderings.
///
/// Set semantics: re-inserting an existing triple is a no-op. All three
/// indexes are updated atomically by insert/remove, so match() can pick
/// whichever ordering fits the bound positions.
class Graph {
 public:
  Graph() : prefixes_(default_prefixes()) {}

  /// Returns true iff the triple was not already present.
  bool insert(Triple t);
  bool insert(Term s, Term p, Term o) { return insert(Triple(std::move(s), std::move(p), std::move(o))); }

  /// Returns true iff the triple was present.
  bool remove(const Triple& t);

  bool contains(const Triple& t) const { return spo_.count(t) != 0; }
  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  /// All triples agreeing with every bound position, in index order.
  std::vector<Triple> match(const std::optional<Term>& s,
                            const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  /// SPO index order; the canonical iteration order of the graph.
  const std::set<Triple>& triples() const { return spo_; }

  PrefixMap& prefixes() { return prefixes_; }
  const PrefixMap& prefixes() const { return prefixes_; }
  void add_prefix(const std::string& prefix, const std::string& ns) { prefixes_[prefix] = ns; }

  /// Merges all triples (and prefixes) of other into this graph.
  void merge(const Graph& other);

  /// Distinct terms appearing in any position, in term order.
  std::vector<Term> all_terms() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.spo_ == b.spo_; }

 private:
  struct PosLess {
    bool operator()(const Triple& a, const Triple& b) const {
      if (auto c = a.predicate <=> b.predicate; c != 0) return c < 0;
      if (auto c = a.object <=> b.object; c != 0) return c < 0;
      return a.subject < b.subject;
    }
  };
  struct OspLess {
    bool operator()(const Triple& a, const Triple& b) const {
      if (auto c = a.object <=> b.object; c != 0) return c < 0;
      if (auto c = a.subject <=> b.subject; c != 0) return c < 0;
      return a.predicate < b.predicate;
    }
  };

  std::set<Triple> spo_;
  std::set<Triple, PosLess> pos_;
  std::set<Triple, OspLess> osp_;
  PrefixMap prefixes_;
};

/// True iff the graphs contain the same triples modulo a bijection of
/// blank-node labels. Ground triples must match exactly.
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace capd::rdf
