#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capd/rdf/graph.hpp"

namespace capd::rdf {

/// One position of a triple pattern: a named variable or a concrete term.
class PatternTerm {
 public:
  static PatternTerm variable(std::string name) {
    PatternTerm p;
    p.var_ = std::move(name);
    return p;
  }
  static PatternTerm constant(Term t) {
    PatternTerm p;
    p.term_ = std::move(t);
    return p;
  }

  bool is_variable() const { return !var_.empty(); }
  const std::string& var() const { return var_; }
  const Term& term() const { return *term_; }

  std::string to_string() const { return is_variable() ? "?" + var_ : term_->to_string(); }

  friend bool operator==(const PatternTerm& a, const PatternTerm& b) = default;

 private:
  std::string var_;
  std::optional<Term> term_;
};

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;

  std::vector<std::string> variables() const {
    std::vector<std::string> out;
    for (const PatternTerm* p : {&subject, &predicate, &object})
      if (p->is_variable())
        out.push_back(p->var());
    return out;
  }

  std::string to_string() const {
    return subject.to_string() + " " + predicate.to_string() + " " + object.to_string();
  }

  friend bool operator==(const TriplePattern& a, const TriplePattern& b) = default;
};

/// Solution row: variable name -> bound term.
using Bindings = std::map<std::string, Term>;

enum class CmpOp { Ge, Le, Gt, Lt, Eq, Ne };

std::string to_string(CmpOp op);

/// One comparison conjunct: `?var op operand` where the operand is another
/// variable or a numeric literal.
struct Comparison {
  std::string lhs_var;
  CmpOp op;
  PatternTerm rhs;  // variable or numeric-literal constant

  std::string to_string() const {
    return "?" + lhs_var + " " + capd::rdf::to_string(op) + " " + rhs.to_string();
  }

  friend bool operator==(const Comparison& a, const Comparison& b) = default;
};

/// Evaluates a comparison under the given bindings. Ordering operators
/// require both sides numeric; `=`/`!=` fall back to exact term equality.
/// Unbound variables or non-numeric operands under an ordering operator
/// make the comparison false.
bool eval_comparison(const Comparison& cmp, const Bindings& row);

}  // namespace capd::rdf
