#ifndef DPIMP_EXTENSION_RULES_H_
#define DPIMP_EXTENSION_RULES_H_

#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "dpimp/checker.h"

namespace dpimp {

// A premise of an extension rule does not hold; the caller falls back to the
// core rules.
class RuleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool HasExtensionRule(std::string_view name);

// Applies the rule for `hint.extension`. Throws RuleFailure.
CmdTyping ApplyExtensionRule(Checker& checker, const TypingContext& ctx,
                             const ExpansionHint& hint, TypingMode mode);

struct AdvCompResult {
  double advanced_epsilon = 0;
  ExtReal advanced_delta;
  PrivacyCost simple;
  bool simple_chosen = false;
  PrivacyCost chosen;
};

// n-fold composition of a (ε, δ) mechanism with slack ω. Simple composition
// is chosen only when the advanced bound is worse in both components.
AdvCompResult ComposeAdvanced(const PrivacyCost& per_iteration, int64_t n,
                              const ExtReal& omega);

}  // namespace dpimp

#endif  // DPIMP_EXTENSION_RULES_H_
