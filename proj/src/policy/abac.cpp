#include "capd/policy/abac.hpp"

#include <algorithm>

namespace capd::policy {

void validate_policy(const AbacPolicy& policy) {
  for (const AbacRule& rule : policy.rules) {
    auto check = [&](const AttrPredicate& pred, const char* side) {
      if (pred.attribute.empty())
        throw PolicyError("rule '" + rule.id + "': empty attribute name in " + side +
                          " condition");
      if (pred.op == PredOp::InSet) {
        if (pred.values.empty())
          throw PolicyError("rule '" + rule.id + "': in-set condition on '" + pred.attribute +
                            "' needs at least one value");
        return;
      }
      if (pred.values.size() != 1)
        throw PolicyError("rule '" + rule.id + "': condition on '" + pred.attribute +
                          "' needs exactly one value");
      if ((pred.op == PredOp::Lt || pred.op == PredOp::Gt) &&
          !std::holds_alternative<double>(pred.values.front()))
        throw PolicyError("rule '" + rule.id + "': numeric comparison on '" + pred.attribute +
                          "' against non-numeric value");
    };
    for (const auto& pred : rule.subject_conditions)
      check(pred, "subject");
    for (const auto& pred : rule.object_conditions)
      check(pred, "object");
  }
}

namespace {

bool predicate_holds(const AttrPredicate& pred, const AttrMap& attrs) {
  auto it = attrs.find(pred.attribute);
  if (it == attrs.end())
    return false;
  const AttrValue& actual = it->second;
  switch (pred.op) {
    case PredOp::Eq:
      return actual == pred.values.front();
    case PredOp::Ne:
      return actual != pred.values.front();
    case PredOp::InSet:
      return std::find(pred.values.begin(), pred.values.end(), actual) != pred.values.end();
    case PredOp::Lt:
    case PredOp::Gt: {
      if (!std::holds_alternative<double>(actual))
        return false;
      double lhs = std::get<double>(actual);
      double rhs = std::get<double>(pred.values.front());
      return pred.op == PredOp::Lt ? lhs < rhs : lhs > rhs;
    }
  }
  return false;
}

bool rule_matches(const AbacRule& rule, const AttrMap& subject, const AttrMap& object,
                  AbacAction action) {
  if (rule.action != action)
    return false;
  for (const auto& pred : rule.subject_conditions)
    if (!predicate_holds(pred, subject))
      return false;
  for (const auto& pred : rule.object_conditions)
    if (!predicate_holds(pred, object))
      return false;
  return true;
}

}  // namespace

AccessDecision check_access(const AbacPolicy& policy, const AttrMap& subject_attrs,
                            const AttrMap& object_attrs, AbacAction action) {
  const AbacRule* deny = nullptr;
  const AbacRule* permit = nullptr;
  for (const AbacRule& rule : policy.rules) {
    if (!rule_matches(rule, subject_attrs, object_attrs, action))
      continue;
    if (rule.effect == Effect::Deny) {
      if (!deny || rule.id < deny->id)
        deny = &rule;
    } else if (!permit || rule.id < permit->id) {
      permit = &rule;
    }
  }
  if (deny)
    return {false, deny->id};
  if (permit)
    return {true, permit->id};
  return {false, "default-deny"};
}

AbacAction abac_action_from_string(const std::string& s) {
  if (s == "read") return AbacAction::Read;
  if (s == "send") return AbacAction::Send;
  if (s == "command") return AbacAction::Command;
  throw PolicyError("unknown ABAC action '" + s + "' (expected read|send|command)");
}

std::string to_string(AbacAction a) {
  switch (a) {
    case AbacAction::Read: return "read";
    case AbacAction::Send: return "send";
    case AbacAction::Command: return "command";
  }
  return "?";
}

}  // namespace capd::policy
