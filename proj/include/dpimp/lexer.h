#ifndef DPIMP_LEXER_H_
#define DPIMP_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "dpimp/error.h"

namespace dpimp {

enum class TokenKind {
  kIdent,
  kInt,
  kFloat,
  kSymbol,
  kEnd,
};

struct Token {
  TokenKind kind;
  std::string text;
  SourceLoc loc;
};

// Splits source text into tokens. Comments (`#`, `//`, `/* */`) and
// whitespace are dropped. The result always ends with a kEnd token.
std::vector<Token> Tokenize(std::string_view source);

}  // namespace dpimp

#endif  // DPIMP_LEXER_H_
