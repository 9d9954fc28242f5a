#ifndef DPIMP_AST_H_
#define DPIMP_AST_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dpimp/error.h"
#include "dpimp/ext_real.h"
#include "dpimp/shape.h"

namespace dpimp {

// Visitor helper for std::visit over several lambdas.
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Integer literals carry no decimal point; float literals do.
using Literal = std::variant<int64_t, double, bool>;

enum class BinaryOp {
  kAdd,
  kSub,
  kMul,
  kDiv,
  kAnd,
  kOr,
  kLt,
  kLe,
  kGt,
  kGe,
  kEq,
};

std::string_view BinaryOpSymbol(BinaryOp op);
bool IsArithmetic(BinaryOp op);
bool IsComparison(BinaryOp op);
bool IsLogical(BinaryOp op);

// Numeric value of an int or float literal; nullopt for bools.
std::optional<double> LiteralNumber(const Literal& lit);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct VarExpr {
  std::string name;
};
struct LitExpr {
  Literal value;
};
struct BinaryExpr {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct NotExpr {
  ExprPtr operand;
};
struct IndexExpr {
  ExprPtr base;
  ExprPtr index;
};
struct LengthExpr {
  ExprPtr base;
};
// Calls into the fixed builtin table (fc, clip, exp, log, floor, dot, scale,
// zeros).
struct BuiltinExpr {
  std::string name;
  std::vector<ExprPtr> args;
};

struct Expr {
  using Node = std::variant<VarExpr, LitExpr, BinaryExpr, NotExpr, IndexExpr,
                            LengthExpr, BuiltinExpr>;
  Node node;
  SourceLoc loc;
};

struct Cmd;
using CmdPtr = std::shared_ptr<const Cmd>;

struct ExprParam {
  ExprPtr expr;
};
struct CmdParam {
  CmdPtr cmd;
};
struct VarParam {
  std::string name;
};
struct LitParam {
  Literal value;
};
using Param = std::variant<ExprParam, CmdParam, VarParam, LitParam>;

// Marker left around an expanded extension so the checker can try the
// extension's own typing rule. `params` are the actual parameters after
// substitution; command parameters share nodes with the expanded body.
struct ExpansionHint {
  std::string extension;
  std::vector<Param> params;
  SourceLoc loc;
};

struct AssignCmd {
  std::string target;
  ExprPtr value;
};
struct IndexAssignCmd {
  std::string target;
  ExprPtr index;
  ExprPtr value;
};
// `target.length = length`, or `target[element].length = length` when
// `element` is set.
struct LengthAssignCmd {
  std::string target;
  ExprPtr element;
  ExprPtr length;
};
struct LaplaceCmd {
  std::string target;
  double width;
  ExprPtr center;
};
struct IfCmd {
  ExprPtr cond;
  CmdPtr then_branch;
  CmdPtr else_branch;
};
struct WhileCmd {
  ExprPtr cond;
  CmdPtr body;
};
struct SeqCmd {
  CmdPtr first;
  CmdPtr second;
};
struct SkipCmd {};
struct ExtInvokeCmd {
  std::string name;
  std::vector<Param> params;
};
// A template formal used in command position (`c;` inside an extension body).
struct PlaceholderCmd {
  std::string name;
};
struct HintedCmd {
  ExpansionHint hint;
  CmdPtr body;
};

struct Cmd {
  using Node = std::variant<AssignCmd, IndexAssignCmd, LengthAssignCmd,
                            LaplaceCmd, IfCmd, WhileCmd, SeqCmd, SkipCmd,
                            ExtInvokeCmd, PlaceholderCmd, HintedCmd>;
  Node node;
  SourceLoc loc;
};

struct ExtensionDefinition {
  std::string name;
  std::vector<std::string> formals;
  CmdPtr body;
  SourceLoc loc;
};

struct Declaration {
  std::string name;
  Shape shape;
  ExtReal sensitivity;
  SourceLoc loc;
};

struct Program {
  std::vector<Declaration> declarations;
  std::vector<ExtensionDefinition> extensions;
  CmdPtr main;

  ShapeEnv Shapes() const;
  const Declaration* Find(const std::string& name) const;
};

// Node constructors.
ExprPtr MakeVar(std::string name, SourceLoc loc = {});
ExprPtr MakeLit(Literal value, SourceLoc loc = {});
ExprPtr MakeBinary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});
ExprPtr MakeNot(ExprPtr operand, SourceLoc loc = {});
ExprPtr MakeIndex(ExprPtr base, ExprPtr index, SourceLoc loc = {});
ExprPtr MakeLength(ExprPtr base, SourceLoc loc = {});
ExprPtr MakeBuiltin(std::string name, std::vector<ExprPtr> args,
                    SourceLoc loc = {});

CmdPtr MakeCmd(Cmd::Node node, SourceLoc loc = {});
CmdPtr MakeAssign(std::string target, ExprPtr value, SourceLoc loc = {});
CmdPtr MakeSkip(SourceLoc loc = {});
CmdPtr MakeSeq(CmdPtr first, CmdPtr second, SourceLoc loc = {});
// Right-nested sequence of `cmds`; skip when empty.
CmdPtr MakeSeqList(const std::vector<CmdPtr>& cmds);

// Structural equality ignoring source locations.
bool StructurallyEqual(const Expr& a, const Expr& b);
bool StructurallyEqual(const Cmd& a, const Cmd& b);
bool StructurallyEqual(const Param& a, const Param& b);

// Flattens nested sequences into the list of non-sequence commands.
std::vector<CmdPtr> FlattenSeq(const CmdPtr& cmd);

// Expression form of a parameter: VarParam -> variable, LitParam -> literal.
// Returns null for command parameters.
ExprPtr ParamAsExpr(const Param& param);

// Arity of a builtin function, or nullopt if `name` is not one. "bag" is the
// zero-argument empty-bag constant written `{}`.
std::optional<int> BuiltinArity(std::string_view name);

// Names of the pre-registered extensions.
bool IsStandardExtension(std::string_view name);

// Literal value of an expression that is a bare literal.
std::optional<Literal> AsLiteral(const Expr& e);

}  // namespace dpimp

#endif  // DPIMP_AST_H_
