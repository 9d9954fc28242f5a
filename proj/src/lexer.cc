#include "dpimp/lexer.h"

#include <array>
#include <cctype>

namespace dpimp {

namespace {

constexpr std::array<std::string_view, 6> kTwoCharSymbols = {
    "$=", "&&", "||", "<=", ">=", "=="};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    while (true) {
      SkipTrivia();
      SourceLoc loc{line_, col_};
      if (pos_ >= src_.size()) {
        tokens.push_back({TokenKind::kEnd, "", loc});
        return tokens;
      }
      char c = src_[pos_];
      if (IsIdentStart(c)) {
        size_t start = pos_;
        while (pos_ < src_.size() && IsIdentChar(src_[pos_])) Advance();
        tokens.push_back({TokenKind::kIdent,
                          std::string(src_.substr(start, pos_ - start)), loc});
      } else if (IsDigit(c) || (c == '.' && pos_ + 1 < src_.size() &&
                                IsDigit(src_[pos_ + 1]))) {
        tokens.push_back(Number(loc));
      } else {
        tokens.push_back(Symbol(loc));
      }
    }
  }

 private:
  void Advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void SkipTrivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else if (c == '#' || src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        SourceLoc loc{line_, col_};
        Advance();
        Advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") Advance();
        if (pos_ >= src_.size()) throw ParseError("unterminated comment", loc);
        Advance();
        Advance();
      } else {
        return;
      }
    }
  }

  Token Number(SourceLoc loc) {
    size_t start = pos_;
    bool is_float = false;
    while (pos_ < src_.size() && IsDigit(src_[pos_])) Advance();
    if (pos_ < src_.size() && src_[pos_] == '.' &&
        !(pos_ + 1 < src_.size() && IsIdentStart(src_[pos_ + 1]))) {
      is_float = true;
      Advance();
      while (pos_ < src_.size() && IsDigit(src_[pos_])) Advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t save = pos_;
      int line = line_, col = col_;
      Advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        Advance();
      }
      if (pos_ < src_.size() && IsDigit(src_[pos_])) {
        is_float = true;
        while (pos_ < src_.size() && IsDigit(src_[pos_])) Advance();
      } else {
        pos_ = save;
        line_ = line;
        col_ = col;
      }
    }
    if (pos_ < src_.size() && IsIdentStart(src_[pos_])) {
      throw ParseError("malformed number", loc);
    }
    return {is_float ? TokenKind::kFloat : TokenKind::kInt,
            std::string(src_.substr(start, pos_ - start)), loc};
  }

  Token Symbol(SourceLoc loc) {
    for (std::string_view sym : kTwoCharSymbols) {
      if (src_.substr(pos_, 2) == sym) {
        Advance();
        Advance();
        return {TokenKind::kSymbol, std::string(sym), loc};
      }
    }
    char c = src_[pos_];
    static constexpr std::string_view kSingle = "+-*/<>=!()[]{};,.:@";
    if (kSingle.find(c) == std::string_view::npos) {
      throw ParseError(std::string("unexpected character '") + c + "'", loc);
    }
    Advance();
    return {TokenKind::kSymbol, std::string(1, c), loc};
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> Tokenize(std::string_view source) {
  return Lexer(source).Run();
}

}  // namespace dpimp
