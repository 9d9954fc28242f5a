#include "dpimp/parser.h"

#include <charconv>
#include <cstdlib>
#include <set>
#include <string>
#include <utility>

#include "dpimp/lexer.h"

namespace dpimp {

namespace {

const std::set<std::string, std::less<>> kKeywords = {
    "if",   "then",  "else",      "end",  "while", "do",
    "skip", "true",  "extension", "false", "inf"};

struct NameUse {
  std::string name;
  SourceLoc loc;
  bool placeholder;
};

class Parser {
 public:
  Parser(std::string_view source, bool allow_reserved)
      : tokens_(Tokenize(source)), allow_reserved_(allow_reserved) {
    for (size_t i = 0; i + 1 < tokens_.size(); ++i) {
      if (tokens_[i].kind == TokenKind::kIdent &&
          tokens_[i].text == "extension" &&
          tokens_[i + 1].kind == TokenKind::kIdent) {
        extension_names_.insert(tokens_[i + 1].text);
      }
    }
  }

  Program ParseFile(bool allow_statements) {
    Program program;
    std::vector<CmdPtr> stmts;
    std::vector<NameUse> main_uses;
    while (!AtEnd()) {
      if (PeekIdent("extension")) {
        program.extensions.push_back(ParseExtension());
        continue;
      }
      if (IsDeclarationStart()) {
        ParseDeclaration(program);
        continue;
      }
      if (!allow_statements) {
        throw ParseError("expected an extension definition", Peek().loc);
      }
      uses_ = &main_uses;
      stmts.push_back(ParseStatement());
      uses_ = nullptr;
      FinishStatement(stmts.back());
    }
    program.main = MakeSeqList(stmts);
    for (const auto& use : main_uses) {
      if (use.placeholder) {
        throw ParseError("command placeholder '" + use.name +
                             "' outside an extension body",
                         use.loc);
      }
      if (!program.Find(use.name)) {
        throw ParseError("undeclared variable '" + use.name + "'", use.loc);
      }
    }
    return program;
  }

 private:
  // ---- token helpers ----
  const Token& Peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  bool AtEnd() const { return Peek().kind == TokenKind::kEnd; }
  bool PeekSymbol(std::string_view s, size_t ahead = 0) const {
    return Peek(ahead).kind == TokenKind::kSymbol && Peek(ahead).text == s;
  }
  bool PeekIdent(std::string_view s, size_t ahead = 0) const {
    return Peek(ahead).kind == TokenKind::kIdent && Peek(ahead).text == s;
  }
  const Token& Next() {
    const Token& t = Peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool AcceptSymbol(std::string_view s) {
    if (!PeekSymbol(s)) return false;
    Next();
    return true;
  }
  [[noreturn]] void Fail(const std::string& what) const {
    const Token& t = Peek();
    std::string found = t.kind == TokenKind::kEnd ? "end of input"
                                                  : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, t.loc);
  }
  void ExpectSymbol(std::string_view s) {
    if (!AcceptSymbol(s)) Fail("expected '" + std::string(s) + "'");
  }
  void ExpectKeyword(std::string_view s) {
    if (!PeekIdent(s)) Fail("expected '" + std::string(s) + "'");
    Next();
  }
  std::string ExpectName() {
    const Token& t = Peek();
    if (t.kind != TokenKind::kIdent || kKeywords.count(t.text)) {
      Fail("expected an identifier");
    }
    Next();
    return t.text;
  }
  void Use(const std::string& name, SourceLoc loc, bool placeholder = false) {
    if (uses_) uses_->push_back({name, loc, placeholder});
  }

  // ---- declarations ----
  bool IsDeclarationStart() const {
    if (Peek().kind != TokenKind::kIdent || kKeywords.count(Peek().text)) {
      return false;
    }
    return PeekSymbol(":", 1) || PeekSymbol(",", 1);
  }

  void ParseDeclaration(Program& program) {
    std::vector<std::pair<std::string, SourceLoc>> names;
    do {
      SourceLoc loc = Peek().loc;
      names.emplace_back(ExpectName(), loc);
    } while (AcceptSymbol(","));
    ExpectSymbol(":");
    Shape shape = ParseShape();
    ExtReal sens = ExtReal::Zero();
    if (AcceptSymbol("@")) {
      if (PeekIdent("inf")) {
        Next();
        sens = ExtReal::Infinity();
      } else if (Peek().kind == TokenKind::kInt ||
                 Peek().kind == TokenKind::kFloat) {
        sens = ExtReal::FromDouble(std::strtod(Next().text.c_str(), nullptr));
      } else {
        Fail("expected a sensitivity");
      }
    }
    ExpectSymbol(";");
    for (auto& [name, loc] : names) {
      if (program.Find(name)) {
        throw ParseError("duplicate declaration of '" + name + "'", loc);
      }
      program.declarations.push_back({name, shape, sens, loc});
    }
  }

  Shape ParseShape() {
    if (AcceptSymbol("[")) {
      Shape elem = ParseShape();
      ExpectSymbol("]");
      return Shape::Vector(elem);
    }
    if (AcceptSymbol("{")) {
      Shape elem = ParseShape();
      ExpectSymbol("}");
      return Shape::Bag(elem);
    }
    if (PeekIdent("int")) {
      Next();
      return Shape::Int();
    }
    if (PeekIdent("float")) {
      Next();
      return Shape::Float();
    }
    if (PeekIdent("bool")) {
      Next();
      return Shape::Bool();
    }
    Fail("expected a shape");
  }

  // ---- extension definitions ----
  ExtensionDefinition ParseExtension() {
    SourceLoc loc = Peek().loc;
    ExpectKeyword("extension");
    ExtensionDefinition def;
    def.loc = loc;
    SourceLoc name_loc = Peek().loc;
    def.name = ExpectName();
    if (!allow_reserved_ &&
        (IsStandardExtension(def.name) || BuiltinArity(def.name))) {
      throw ParseError("'" + def.name + "' is a reserved name", name_loc);
    }
    if (!defined_extensions_.insert(def.name).second) {
      throw ParseError("duplicate extension '" + def.name + "'", name_loc);
    }
    ExpectSymbol("(");
    std::set<std::string> formals;
    if (!PeekSymbol(")")) {
      do {
        SourceLoc floc = Peek().loc;
        std::string f = ExpectName();
        if (!formals.insert(f).second) {
          throw ParseError("formal '" + f + "' repeated", floc);
        }
        def.formals.push_back(f);
      } while (AcceptSymbol(","));
    }
    ExpectSymbol(")");
    ExpectSymbol("{");
    std::vector<NameUse> body_uses;
    uses_ = &body_uses;
    def.body = ParseBlock();
    uses_ = nullptr;
    ExpectSymbol("}");
    AcceptSymbol(";");
    for (const auto& use : body_uses) {
      if (!formals.count(use.name)) {
        throw ParseError("'" + use.name + "' is not a formal of extension '" +
                             def.name + "'",
                         use.loc);
      }
    }
    return def;
  }

  // ---- commands ----
  static bool EndsWithEnd(const CmdPtr& c) {
    return std::holds_alternative<IfCmd>(c->node) ||
           std::holds_alternative<WhileCmd>(c->node);
  }

  bool AtBlockTerminator() const {
    return AtEnd() || PeekIdent("end") || PeekIdent("else") ||
           PeekSymbol("}") || PeekSymbol(")") || PeekSymbol(",");
  }

  // Consumes the separator after a statement.
  void FinishStatement(const CmdPtr& stmt) {
    if (AcceptSymbol(";")) {
      while (AcceptSymbol(";")) {
      }
      return;
    }
    if (AtBlockTerminator() || EndsWithEnd(stmt)) return;
    Fail("expected ';'");
  }

  CmdPtr ParseBlock() {
    std::vector<CmdPtr> stmts;
    while (AcceptSymbol(";")) {
    }
    while (!AtBlockTerminator()) {
      stmts.push_back(ParseStatement());
      FinishStatement(stmts.back());
    }
    return MakeSeqList(stmts);
  }

  CmdPtr ParseStatement() {
    const Token& t = Peek();
    SourceLoc loc = t.loc;
    if (t.kind != TokenKind::kIdent) Fail("expected a command");
    if (t.text == "skip") {
      Next();
      return MakeSkip(loc);
    }
    if (t.text == "if") {
      Next();
      ExprPtr cond = ParseExpr();
      ExpectKeyword("then");
      CmdPtr then_branch = ParseBlock();
      CmdPtr else_branch;
      if (PeekIdent("else")) {
        Next();
        else_branch = ParseBlock();
      } else {
        else_branch = MakeSkip(Peek().loc);
      }
      ExpectKeyword("end");
      return MakeCmd(IfCmd{cond, then_branch, else_branch}, loc);
    }
    if (t.text == "while") {
      Next();
      ExprPtr cond = ParseExpr();
      ExpectKeyword("do");
      CmdPtr body = ParseBlock();
      ExpectKeyword("end");
      return MakeCmd(WhileCmd{cond, body}, loc);
    }
    std::string name = ExpectName();
    if (PeekSymbol("(")) return ParseInvocation(name, loc);
    if (AcceptSymbol("=")) {
      Use(name, loc);
      return MakeAssign(name, ParseExpr(), loc);
    }
    if (AcceptSymbol("$=")) {
      Use(name, loc);
      return ParseLaplace(name, loc);
    }
    if (AcceptSymbol("[")) {
      Use(name, loc);
      ExprPtr index = ParseExpr();
      ExpectSymbol("]");
      if (AcceptSymbol(".")) {
        ExpectKeyword("length");
        ExpectSymbol("=");
        return MakeCmd(LengthAssignCmd{name, index, ParseExpr()}, loc);
      }
      ExpectSymbol("=");
      return MakeCmd(IndexAssignCmd{name, index, ParseExpr()}, loc);
    }
    if (AcceptSymbol(".")) {
      Use(name, loc);
      ExpectKeyword("length");
      ExpectSymbol("=");
      return MakeCmd(LengthAssignCmd{name, nullptr, ParseExpr()}, loc);
    }
    if (PeekSymbol(";") || AtBlockTerminator()) {
      Use(name, loc, /*placeholder=*/true);
      return MakeCmd(PlaceholderCmd{name}, loc);
    }
    Fail("expected an assignment after '" + name + "'");
  }

  CmdPtr ParseLaplace(const std::string& target, SourceLoc loc) {
    ExpectKeyword("lap");
    ExpectSymbol("(");
    SourceLoc wloc = Peek().loc;
    bool negative = AcceptSymbol("-");
    if (Peek().kind != TokenKind::kInt && Peek().kind != TokenKind::kFloat) {
      Fail("Laplace width must be a numeric literal");
    }
    double width = std::strtod(Next().text.c_str(), nullptr);
    if (negative) width = -width;
    if (!(width > 0)) {
      throw ParseError("Laplace width must be strictly positive", wloc);
    }
    ExpectSymbol(",");
    ExprPtr center = ParseExpr();
    ExpectSymbol(")");
    return MakeCmd(LaplaceCmd{target, width, center}, loc);
  }

  bool IsKnownExtension(const std::string& name) const {
    return IsStandardExtension(name) || extension_names_.count(name);
  }

  CmdPtr ParseInvocation(const std::string& name, SourceLoc loc) {
    if (!IsKnownExtension(name)) {
      throw ParseError("unknown extension '" + name + "'", loc);
    }
    ExpectSymbol("(");
    std::vector<Param> params;
    if (!PeekSymbol(")")) {
      do {
        params.push_back(ParseParam());
      } while (AcceptSymbol(","));
    }
    ExpectSymbol(")");
    return MakeCmd(ExtInvokeCmd{name, std::move(params)}, loc);
  }

  // A command starts with a keyword, an extension call, or an identifier
  // followed by an assignment operator.
  bool LooksLikeCommand() const {
    if (PeekIdent("skip") || PeekIdent("if") || PeekIdent("while")) {
      return true;
    }
    if (Peek().kind != TokenKind::kIdent || kKeywords.count(Peek().text)) {
      return false;
    }
    if (PeekSymbol("(", 1)) return IsKnownExtension(Peek().text);
    return PeekSymbol("=", 1) || PeekSymbol("$=", 1) || PeekSymbol("[", 1) ||
           (PeekSymbol(".", 1) && PeekIdent("length", 2) &&
            PeekSymbol("=", 3));
  }

  Param ParseParam() {
    if (LooksLikeCommand()) {
      size_t save = pos_;
      size_t uses_size = uses_ ? uses_->size() : 0;
      try {
        CmdPtr cmd = ParseBlock();
        if (PeekSymbol(",") || PeekSymbol(")")) return CmdParam{cmd};
      } catch (const ParseError&) {
        // Not a command; retry as an expression.
      }
      pos_ = save;
      if (uses_) uses_->resize(uses_size);
    }
    ExprPtr e = ParseExpr();
    if (const auto* v = std::get_if<VarExpr>(&e->node)) {
      return VarParam{v->name};
    }
    if (const auto* l = std::get_if<LitExpr>(&e->node)) {
      return LitParam{l->value};
    }
    return ExprParam{e};
  }

  // ---- expressions ----
  ExprPtr ParseExpr() { return ParseOr(); }

  ExprPtr ParseOr() {
    ExprPtr lhs = ParseAnd();
    while (PeekSymbol("||")) {
      SourceLoc loc = Next().loc;
      lhs = MakeBinary(BinaryOp::kOr, lhs, ParseAnd(), loc);
    }
    return lhs;
  }

  ExprPtr ParseAnd() {
    ExprPtr lhs = ParseComparison();
    while (PeekSymbol("&&")) {
      SourceLoc loc = Next().loc;
      lhs = MakeBinary(BinaryOp::kAnd, lhs, ParseComparison(), loc);
    }
    return lhs;
  }

  std::optional<BinaryOp> PeekComparison() const {
    if (Peek().kind != TokenKind::kSymbol) return std::nullopt;
    const std::string& s = Peek().text;
    if (s == "<") return BinaryOp::kLt;
    if (s == "<=") return BinaryOp::kLe;
    if (s == ">") return BinaryOp::kGt;
    if (s == ">=") return BinaryOp::kGe;
    if (s == "==") return BinaryOp::kEq;
    return std::nullopt;
  }

  ExprPtr ParseComparison() {
    ExprPtr lhs = ParseAdditive();
    if (auto op = PeekComparison()) {
      SourceLoc loc = Next().loc;
      lhs = MakeBinary(*op, lhs, ParseAdditive(), loc);
      if (PeekComparison()) Fail("comparisons do not chain");
    }
    return lhs;
  }

  ExprPtr ParseAdditive() {
    ExprPtr lhs = ParseMultiplicative();
    while (PeekSymbol("+") || PeekSymbol("-")) {
      BinaryOp op = Peek().text == "+" ? BinaryOp::kAdd : BinaryOp::kSub;
      SourceLoc loc = Next().loc;
      lhs = MakeBinary(op, lhs, ParseMultiplicative(), loc);
    }
    return lhs;
  }

  ExprPtr ParseMultiplicative() {
    ExprPtr lhs = ParseUnary();
    while (PeekSymbol("*") || PeekSymbol("/")) {
      BinaryOp op = Peek().text == "*" ? BinaryOp::kMul : BinaryOp::kDiv;
      SourceLoc loc = Next().loc;
      lhs = MakeBinary(op, lhs, ParseUnary(), loc);
    }
    return lhs;
  }

  ExprPtr ParseUnary() {
    SourceLoc loc = Peek().loc;
    if (AcceptSymbol("!")) return MakeNot(ParseUnary(), loc);
    if (AcceptSymbol("-")) {
      if ((Peek().kind == TokenKind::kInt ||
           Peek().kind == TokenKind::kFloat) &&
          !PeekSymbol("[", 1) && !PeekSymbol(".", 1)) {
        return ParseNumber(/*negate=*/true, loc);
      }
      return MakeBinary(BinaryOp::kSub, MakeLit(int64_t{0}, loc), ParseUnary(),
                        loc);
    }
    return ParsePostfix();
  }

  ExprPtr ParsePostfix() {
    ExprPtr e = ParsePrimary();
    while (true) {
      SourceLoc loc = Peek().loc;
      if (AcceptSymbol("[")) {
        ExprPtr index = ParseExpr();
        ExpectSymbol("]");
        e = MakeIndex(e, index, loc);
      } else if (PeekSymbol(".") && PeekIdent("length", 1) &&
                 !PeekSymbol("=", 2)) {
        Next();
        Next();
        e = MakeLength(e, loc);
      } else {
        return e;
      }
    }
  }

  ExprPtr ParseNumber(bool negate, SourceLoc loc) {
    const Token& t = Next();
    if (t.kind == TokenKind::kInt) {
      int64_t v = 0;
      std::string text = (negate ? "-" : "") + t.text;
      auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("integer literal out of range", t.loc);
      }
      return MakeLit(v, loc);
    }
    double d = std::strtod(t.text.c_str(), nullptr);
    return MakeLit(negate ? -d : d, loc);
  }

  ExprPtr ParsePrimary() {
    const Token& t = Peek();
    SourceLoc loc = t.loc;
    if (t.kind == TokenKind::kInt || t.kind == TokenKind::kFloat) {
      return ParseNumber(false, loc);
    }
    if (AcceptSymbol("(")) {
      ExprPtr e = ParseExpr();
      ExpectSymbol(")");
      return e;
    }
    if (AcceptSymbol("{")) {
      ExpectSymbol("}");
      return MakeBuiltin("bag", {}, loc);
    }
    if (t.kind != TokenKind::kIdent) Fail("expected an expression");
    if (t.text == "true" || t.text == "false") {
      Next();
      return MakeLit(t.text == "true", loc);
    }
    if (t.text == "zeros" && PeekSymbol("[", 1)) {
      Next();
      Next();
      ExprPtr n = ParseExpr();
      ExpectSymbol("]");
      return MakeBuiltin("zeros", {n}, loc);
    }
    if (t.text.rfind("zero_", 0) == 0 && t.text.size() > 5 &&
        t.text.find_first_not_of("0123456789", 5) == std::string::npos) {
      Next();
      int64_t n = std::stoll(t.text.substr(5));
      return MakeBuiltin("zeros", {MakeLit(n, loc)}, loc);
    }
    std::string name = ExpectName();
    if (PeekSymbol("(")) {
      Next();
      std::vector<ExprPtr> args;
      if (!PeekSymbol(")")) {
        do {
          args.push_back(ParseExpr());
        } while (AcceptSymbol(","));
      }
      ExpectSymbol(")");
      if (name == "length") {
        if (args.size() != 1) {
          throw ParseError("length expects 1 argument", loc);
        }
        return MakeLength(args[0], loc);
      }
      auto arity = BuiltinArity(name);
      if (!arity || name == "bag" || name == "zeros") {
        throw ParseError("unknown function '" + name + "'", loc);
      }
      if (static_cast<size_t>(*arity) != args.size()) {
        throw ParseError(name + " expects " + std::to_string(*arity) +
                             " argument(s)",
                         loc);
      }
      return MakeBuiltin(name, std::move(args), loc);
    }
    Use(name, loc);
    return MakeVar(name, loc);
  }

  std::vector<Token> tokens_;
  bool allow_reserved_;
  size_t pos_ = 0;
  std::set<std::string> extension_names_;
  std::set<std::string> defined_extensions_;
  std::vector<NameUse>* uses_ = nullptr;
};

}  // namespace

Program ParseProgram(std::string_view source) {
  return Parser(source, /*allow_reserved=*/false)
      .ParseFile(/*allow_statements=*/true);
}

std::vector<ExtensionDefinition> ParseExtensionDefinitions(
    std::string_view source) {
  return Parser(source, /*allow_reserved=*/true)
      .ParseFile(/*allow_statements=*/false)
      .extensions;
}

}  // namespace dpimp
