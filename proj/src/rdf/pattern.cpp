#include "capd/rdf/pattern.hpp"

namespace capd::rdf {

std::string to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Ge: return ">=";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Lt: return "<";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

bool eval_comparison(const Comparison& cmp, const Bindings& row) {
  auto lhs_it = row.find(cmp.lhs_var);
  if (lhs_it == row.end())
    return false;
  const Term& lhs = lhs_it->second;

  Term rhs = cmp.rhs.is_variable() ? Term::literal("") : cmp.rhs.term();
  if (cmp.rhs.is_variable()) {
    auto rhs_it = row.find(cmp.rhs.var());
    if (rhs_it == row.end())
      return false;
    rhs = rhs_it->second;
  }

  auto ln = lhs.numeric_value();
  auto rn = rhs.numeric_value();
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
  // Non-numeric sides: only exact term (in)equality is defined.
  switch (cmp.op) {
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
    default: return false;
  }
}

}  // namespace capd::rdf
