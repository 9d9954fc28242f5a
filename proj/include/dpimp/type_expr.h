#ifndef DPIMP_TYPE_EXPR_H_
#define DPIMP_TYPE_EXPR_H_

#include "dpimp/ast.h"
#include "dpimp/context.h"
#include "dpimp/ext_real.h"
#include "dpimp/shape.h"

namespace dpimp {

enum class TypingMode {
  // Core rules, including the premises that keep both runs crashing or not
  // crashing together.
  kStrict,
  // For commands already known to terminate: premises that only guard
  // against one-sided crashes give infinite sensitivity instead of an error.
  kTerminating,
  // kStrict, except clip keeps its argument's sensitivity so the result
  // scales with the context.
  kLinear,
};

struct ExprType {
  ExtReal sens;
  Shape shape;
};

// Sensitivity of `e` under `ctx`. Expects a shape-checked expression.
// Throws TypeError naming the violated premise.
ExprType TypeExpr(const TypingContext& ctx, const Expr& e,
                  TypingMode mode = TypingMode::kStrict);

}  // namespace dpimp

#endif  // DPIMP_TYPE_EXPR_H_
