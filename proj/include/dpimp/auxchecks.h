#ifndef DPIMP_AUXCHECKS_H_
#define DPIMP_AUXCHECKS_H_

#include <string>

#include "dpimp/ast.h"
#include "dpimp/context.h"

namespace dpimp {

class Checker;

struct AuxVerdict {
  bool ok = true;
  std::string failing_premise;
  SourceLoc loc;

  static AuxVerdict Ok() { return {}; }
  static AuxVerdict Fail(std::string premise, SourceLoc loc) {
    return {false, std::move(premise), loc};
  }
  explicit operator bool() const { return ok; }
};

// True iff no Laplace command occurs in `c`.
AuxVerdict CheckDeterm(const Cmd& c);

enum class IndexPolicy {
  // Only the listed term rules: no indexing at all.
  kStrict,
  // Also admits index expressions, index assignments and length assignments,
  // assuming indices are in range and lengths non-negative.
  kAssumeInBounds,
};

AuxVerdict CheckTerm(const TypingContext& ctx, const Expr& e,
                     IndexPolicy policy = IndexPolicy::kStrict);
AuxVerdict CheckTerm(const TypingContext& ctx, const Cmd& c,
                     IndexPolicy policy = IndexPolicy::kStrict);

struct LinearVerdict {
  AuxVerdict verdict;
  TypingContext post;
};

// Derives {pre} c {post} linear. Extension nodes use `checker`'s rules.
LinearVerdict CheckLinear(Checker& checker, const TypingContext& pre,
                          const Cmd& c);

// A linear judgment may be weakened to a larger post-context.
bool WeakenLinear(const TypingContext& derived, const TypingContext& wanted);

}  // namespace dpimp

#endif  // DPIMP_AUXCHECKS_H_
