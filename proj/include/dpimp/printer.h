#ifndef DPIMP_PRINTER_H_
#define DPIMP_PRINTER_H_

#include <string>

#include "dpimp/ast.h"

namespace dpimp {

std::string PrintLiteral(const Literal& lit);
std::string PrintExpr(const Expr& e);
std::string PrintParam(const Param& p);

// Multi-line rendering, statements separated by newlines and nested blocks
// indented by two spaces. Hinted nodes are rendered as comment-bracketed
// regions so the output still parses.
std::string PrettyPrint(const Cmd& c);

// Declarations, extension definitions and the main command.
std::string PrettyPrint(const Program& p);

}  // namespace dpimp

#endif  // DPIMP_PRINTER_H_
