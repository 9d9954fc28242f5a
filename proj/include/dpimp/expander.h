#ifndef DPIMP_EXPANDER_H_
#define DPIMP_EXPANDER_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dpimp/ast.h"

namespace dpimp {

// Extension templates by name.
class ExtensionRegistry {
 public:
  // bmap, vmap, partition, bsum, ac and repeat.
  static ExtensionRegistry Standard();
  // Standard extensions plus the ones defined in `program`.
  static ExtensionRegistry ForProgram(const Program& program);

  // Throws ExpansionError if the name is taken.
  void Add(ExtensionDefinition def);
  const ExtensionDefinition* Find(const std::string& name) const;

 private:
  std::map<std::string, ExtensionDefinition> defs_;
};

// Source text of the standard templates.
std::string_view StandardExtensionSource();

struct ExpansionWarning {
  std::string message;
  SourceLoc loc;
};

// Replaces each formal by its actual throughout `body`. Actual parameters
// are inserted as-is, never rewritten. Throws ExpansionError (located at
// `loc`) on arity or kind mismatch.
CmdPtr Substitute(const CmdPtr& body, const std::vector<std::string>& formals,
                  const std::vector<Param>& actuals, SourceLoc loc);

struct ExpansionResult {
  CmdPtr cmd;
  std::vector<ExpansionWarning> warnings;
};

// Expands every invocation, innermost command arguments first, and wraps each
// expansion in a Hinted node. Already-hinted nodes are left alone, so the
// function is idempotent.
ExpansionResult Expand(const CmdPtr& cmd, const ExtensionRegistry& registry);

// Expands the main command of `program` with its own registry.
ExpansionResult ExpandProgram(const Program& program);

// Drops Hinted wrappers, keeping their bodies.
CmdPtr StripHints(const CmdPtr& cmd);

}  // namespace dpimp

#endif  // DPIMP_EXPANDER_H_
