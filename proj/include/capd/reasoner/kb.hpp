#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "capd/reasoner/rule.hpp"

namespace capd::reasoner {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;

class KbError : public std::runtime_error {
 public:
  explicit KbError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by explain() when the triple is neither asserted nor derivable.
class NotInKb : public std::runtime_error {
 public:
  explicit NotInKb(const std::string& what) : std::runtime_error(what) {}
};

/// Support record: a ground rule instantiation deriving `conclusion`.
struct Justification {
  Triple conclusion;
  std::string rule;
  std::vector<Triple> premises;  // ground body instantiation, body order

  friend bool operator==(const Justification& a, const Justification& b) = default;
  friend auto operator<=>(const Justification& a, const Justification& b) = default;
};

/// One node of a proof tree. Leaves are asserted triples; inner nodes
/// carry the rule that derived them and their premise subtrees.
struct ProofNode {
  Triple conclusion;
  bool asserted = false;
  std::string rule;
  std::vector<ProofNode> premises;

  int depth() const;
};

/// Indented text rendering of a proof tree.
std::string format_proof(const ProofNode& node, const rdf::PrefixMap& prefixes);

/// Asserted facts + rule-derived facts with justification bookkeeping.
///
/// forward_chain() runs semi-naive evaluation to fixpoint, recording one
/// justification per distinct ground body instantiation. retract() removes
/// an asserted fact and sweeps away every inference left without
/// well-founded support, leaving the KB exactly as if forward chaining had
/// been re-run from the remaining assertions.
class KnowledgeBase {
 public:
  KnowledgeBase() : KnowledgeBase(builtin_rules()) {}
  explicit KnowledgeBase(std::vector<Rule> rules);

  void add_rule(Rule rule);  // checks safety
  const std::vector<Rule>& rules() const { return rules_; }

  /// Adds to the asserted graph. Returns false if already asserted.
  bool assert_fact(Triple t);

  /// Runs rules to fixpoint; returns the newly inferred triples.
  std::set<Triple> forward_chain();

  /// Removes an asserted triple and everything that loses support.
  /// Returns every triple removed from the KB.
  std::set<Triple> retract(const Triple& t);

  /// Minimal-depth proof tree for a triple in the KB.
  ProofNode explain(const Triple& t) const;

  bool contains(const Triple& t) const {
    return asserted_.contains(t) || inferred_.contains(t);
  }
  const Graph& asserted() const { return asserted_; }
  const Graph& inferred() const { return inferred_; }

  /// Asserted and inferred triples as one graph (prefixes preserved).
  Graph snapshot() const;

  const std::map<Triple, std::vector<Justification>>& justifications() const {
    return justifications_;
  }

  void add_prefix(const std::string& prefix, const std::string& ns) {
    asserted_.add_prefix(prefix, ns);
  }
  const rdf::PrefixMap& prefixes() const { return asserted_.prefixes(); }

 private:
  bool record(Justification j);  // true if the justification is new
  std::map<Triple, int> support_depths() const;

  std::vector<Rule> rules_;
  Graph asserted_;
  Graph inferred_;
  std::map<Triple, std::vector<Justification>> justifications_;
  std::set<Triple> unprocessed_;  // facts not yet used as semi-naive deltas
};

}  // namespace capd::reasoner
