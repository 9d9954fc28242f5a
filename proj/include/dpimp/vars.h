#ifndef DPIMP_VARS_H_
#define DPIMP_VARS_H_

#include <set>
#include <string>

#include "dpimp/ast.h"

namespace dpimp {

using VarSet = std::set<std::string>;

// Variables occurring syntactically in the node.
VarSet FreeVars(const Expr& e);
VarSet FreeVars(const Cmd& c);
VarSet FreeVars(const Param& p);

// Assignment, index-assignment, length-assignment and Laplace targets.
// Hinted nodes contribute their expansion. An unexpanded invocation
// contributes its variable parameters and the targets of its command
// parameters, since any of them may be written by the template.
VarSet ModifiedVars(const Cmd& c);

}  // namespace dpimp

#endif  // DPIMP_VARS_H_
