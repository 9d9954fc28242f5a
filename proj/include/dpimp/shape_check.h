#ifndef DPIMP_SHAPE_CHECK_H_
#define DPIMP_SHAPE_CHECK_H_

#include "dpimp/ast.h"
#include "dpimp/shape.h"

namespace dpimp {

// Shape of `e`. Throws ShapeError on ill-shaped expressions, unknown
// variables, and the empty bag `{}` outside an assignment.
Shape ShapeOf(const Expr& e, const ShapeEnv& env);

// A value of shape `src` may be stored where `dst` is declared: equal shapes,
// or ints widened to floats inside matching collections.
bool Assignable(const Shape& src, const Shape& dst);

// Checks an expanded command. Throws ShapeError at the first violation.
void ShapeCheck(const Cmd& c, const ShapeEnv& env);

}  // namespace dpimp

#endif  // DPIMP_SHAPE_CHECK_H_
