#ifndef DPIMP_CHECKER_H_
#define DPIMP_CHECKER_H_

#include <optional>
#include <string>
#include <vector>

#include "dpimp/ast.h"
#include "dpimp/auxchecks.h"
#include "dpimp/context.h"
#include "dpimp/type_expr.h"

namespace dpimp {

struct CmdTyping {
  TypingContext ctx;
  PrivacyCost cost;
};

// One attempt to use an extension's own typing rule.
struct RuleLogEntry {
  std::string extension;
  SourceLoc loc;
  bool applied = false;
  std::string detail;  // chosen composition, or why the rule did not apply
};

class Checker {
 public:
  struct Options {
    IndexPolicy term_policy = IndexPolicy::kAssumeInBounds;
    // When false, hinted nodes are typed by the core rules only.
    bool extension_rules = true;
  };

  Checker() = default;
  explicit Checker(Options options) : options_(options) {}

  const Options& options() const { return options_; }

  // Types an expanded, shape-checked command. Throws TypeError.
  CmdTyping TypeCmd(const TypingContext& ctx, const Cmd& c,
                    TypingMode mode = TypingMode::kStrict);

  struct Invariant {
    TypingContext ctx;
    PrivacyCost body_cost;
  };
  // Finds Γ with {Γ} body {Γ' ≤ Γ}: first `ctx` itself, then `ctx` with
  // every growing variable widened to infinity. Nullopt if both fail.
  std::optional<Invariant> FindInvariant(const TypingContext& ctx,
                                         const Cmd& body, TypingMode mode);

  // Distinct entries in the order they were first recorded.
  const std::vector<RuleLogEntry>& log() const { return log_; }
  void Log(RuleLogEntry entry);

 private:
  CmdTyping TypeWhile(const TypingContext& ctx, const WhileCmd& w,
                      SourceLoc loc, TypingMode mode);
  CmdTyping TypeHinted(const TypingContext& ctx, const HintedCmd& h,
                       SourceLoc loc, TypingMode mode);

  Options options_;
  std::vector<RuleLogEntry> log_;
};

}  // namespace dpimp

#endif  // DPIMP_CHECKER_H_
