#ifndef DPIMP_PARSER_H_
#define DPIMP_PARSER_H_

#include <string_view>
#include <vector>

#include "dpimp/ast.h"

namespace dpimp {

// Parses a complete source file: declarations, extension definitions and the
// main command. Throws ParseError on syntax and scope errors.
Program ParseProgram(std::string_view source);

// Parses a file holding only `extension` definitions. Bodies may invoke the
// standard extensions and any extension defined earlier in the same file.
std::vector<ExtensionDefinition> ParseExtensionDefinitions(
    std::string_view source);

}  // namespace dpimp

#endif  // DPIMP_PARSER_H_
