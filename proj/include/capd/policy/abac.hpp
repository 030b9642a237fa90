#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace capd::policy {

class PolicyError : public std::runtime_error {
 public:
  explicit PolicyError(const std::string& what) : std::runtime_error(what) {}
};

using AttrValue = std::variant<std::string, double>;
using AttrMap = std::map<std::string, AttrValue>;

enum class PredOp { Eq, Ne, InSet, Lt, Gt };
enum class AbacAction { Read, Send, Command };
enum class Effect { Permit, Deny };

/// One attribute condition: the named attribute compared against a value
/// (or a value set for InSet). A missing attribute never satisfies a
/// condition.
struct AttrPredicate {
  std::string attribute;
  PredOp op;
  std::vector<AttrValue> values;  // exactly one except for InSet
};

struct AbacRule {
  std::string id;
  std::vector<AttrPredicate> subject_conditions;
  std::vector<AttrPredicate> object_conditions;
  AbacAction action;
  Effect effect;
};

struct AbacPolicy {
  std::vector<AbacRule> rules;
};

struct AccessDecision {
  bool permit = false;
  std::string rule_id;  // deciding rule, or "default-deny"
};

/// Load-time structural check: numeric comparisons must carry numeric
/// values, InSet needs at least one value, others exactly one.
void validate_policy(const AbacPolicy& policy);

/// Deny-by-default, deny-overrides evaluation. Order-independent: among
/// matching rules of the deciding effect, the lexically smallest id is
/// reported.
AccessDecision check_access(const AbacPolicy& policy, const AttrMap& subject_attrs,
                            const AttrMap& object_attrs, AbacAction action);

AbacAction abac_action_from_string(const std::string& s);
std::string to_string(AbacAction a);

}  // namespace capd::policy
