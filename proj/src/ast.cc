#include "dpimp/ast.h"

namespace dpimp {

std::string_view BinaryOpSymbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd:
      return "+";
    case BinaryOp::kSub:
      return "-";
    case BinaryOp::kMul:
      return "*";
    case BinaryOp::kDiv:
      return "/";
    case BinaryOp::kAnd:
      return "&&";
    case BinaryOp::kOr:
      return "||";
    case BinaryOp::kLt:
      return "<";
    case BinaryOp::kLe:
      return "<=";
    case BinaryOp::kGt:
      return ">";
    case BinaryOp::kGe:
      return ">=";
    case BinaryOp::kEq:
      return "==";
  }
  return "?";
}

bool IsArithmetic(BinaryOp op) {
  return op == BinaryOp::kAdd || op == BinaryOp::kSub ||
         op == BinaryOp::kMul || op == BinaryOp::kDiv;
}

bool IsComparison(BinaryOp op) {
  return op == BinaryOp::kLt || op == BinaryOp::kLe || op == BinaryOp::kGt ||
         op == BinaryOp::kGe || op == BinaryOp::kEq;
}

bool IsLogical(BinaryOp op) {
  return op == BinaryOp::kAnd || op == BinaryOp::kOr;
}

std::optional<double> LiteralNumber(const Literal& lit) {
  if (auto* i = std::get_if<int64_t>(&lit)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&lit)) return *d;
  return std::nullopt;
}

std::optional<int> BuiltinArity(std::string_view name) {
  if (name == "fc" || name == "exp" || name == "log" || name == "floor" ||
      name == "zeros") {
    return 1;
  }
  if (name == "clip" || name == "dot" || name == "scale") return 2;
  if (name == "bag") return 0;
  return std::nullopt;
}

bool IsStandardExtension(std::string_view name) {
  return name == "bmap" || name == "vmap" || name == "partition" ||
         name == "bsum" || name == "ac" || name == "repeat";
}

ShapeEnv Program::Shapes() const {
  ShapeEnv env;
  for (const auto& d : declarations) env.emplace(d.name, d.shape);
  return env;
}

const Declaration* Program::Find(const std::string& name) const {
  for (const auto& d : declarations) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

ExprPtr MakeVar(std::string name, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{VarExpr{std::move(name)}, loc});
}

ExprPtr MakeLit(Literal value, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{LitExpr{value}, loc});
}

ExprPtr MakeBinary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
  return std::make_shared<const Expr>(
      Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}, loc});
}

ExprPtr MakeNot(ExprPtr operand, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{NotExpr{std::move(operand)}, loc});
}

ExprPtr MakeIndex(ExprPtr base, ExprPtr index, SourceLoc loc) {
  return std::make_shared<const Expr>(
      Expr{IndexExpr{std::move(base), std::move(index)}, loc});
}

ExprPtr MakeLength(ExprPtr base, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{LengthExpr{std::move(base)}, loc});
}

ExprPtr MakeBuiltin(std::string name, std::vector<ExprPtr> args,
                    SourceLoc loc) {
  return std::make_shared<const Expr>(
      Expr{BuiltinExpr{std::move(name), std::move(args)}, loc});
}

CmdPtr MakeCmd(Cmd::Node node, SourceLoc loc) {
  return std::make_shared<const Cmd>(Cmd{std::move(node), loc});
}

CmdPtr MakeAssign(std::string target, ExprPtr value, SourceLoc loc) {
  return MakeCmd(AssignCmd{std::move(target), std::move(value)}, loc);
}

CmdPtr MakeSkip(SourceLoc loc) { return MakeCmd(SkipCmd{}, loc); }

CmdPtr MakeSeq(CmdPtr first, CmdPtr second, SourceLoc loc) {
  return MakeCmd(SeqCmd{std::move(first), std::move(second)}, loc);
}

CmdPtr MakeSeqList(const std::vector<CmdPtr>& cmds) {
  if (cmds.empty()) return MakeSkip();
  CmdPtr result = cmds.back();
  for (auto it = cmds.rbegin() + 1; it != cmds.rend(); ++it) {
    result = MakeSeq(*it, result, (*it)->loc);
  }
  return result;
}

namespace {

bool LiteralEqual(const Literal& a, const Literal& b) {
  if (a.index() != b.index()) return false;
  return a == b;
}

bool ExprListEqual(const std::vector<ExprPtr>& a,
                   const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!StructurallyEqual(*a[i], *b[i])) return false;
  }
  return true;
}

bool ParamListEqual(const std::vector<Param>& a, const std::vector<Param>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!StructurallyEqual(a[i], b[i])) return false;
  }
  return true;
}

bool OptionalExprEqual(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return StructurallyEqual(*a, *b);
}

}  // namespace

bool StructurallyEqual(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      Overloaded{
          [&](const VarExpr& x) { return x.name == std::get<VarExpr>(b.node).name; },
          [&](const LitExpr& x) {
            return LiteralEqual(x.value, std::get<LitExpr>(b.node).value);
          },
          [&](const BinaryExpr& x) {
            const auto& y = std::get<BinaryExpr>(b.node);
            return x.op == y.op && StructurallyEqual(*x.lhs, *y.lhs) &&
                   StructurallyEqual(*x.rhs, *y.rhs);
          },
          [&](const NotExpr& x) {
            return StructurallyEqual(*x.operand,
                                     *std::get<NotExpr>(b.node).operand);
          },
          [&](const IndexExpr& x) {
            const auto& y = std::get<IndexExpr>(b.node);
            return StructurallyEqual(*x.base, *y.base) &&
                   StructurallyEqual(*x.index, *y.index);
          },
          [&](const LengthExpr& x) {
            return StructurallyEqual(*x.base, *std::get<LengthExpr>(b.node).base);
          },
          [&](const BuiltinExpr& x) {
            const auto& y = std::get<BuiltinExpr>(b.node);
            return x.name == y.name && ExprListEqual(x.args, y.args);
          },
      },
      a.node);
}

bool StructurallyEqual(const Param& a, const Param& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      Overloaded{
          [&](const ExprParam& x) {
            return StructurallyEqual(*x.expr, *std::get<ExprParam>(b).expr);
          },
          [&](const CmdParam& x) {
            return StructurallyEqual(*x.cmd, *std::get<CmdParam>(b).cmd);
          },
          [&](const VarParam& x) { return x.name == std::get<VarParam>(b).name; },
          [&](const LitParam& x) {
            return LiteralEqual(x.value, std::get<LitParam>(b).value);
          },
      },
      a);
}

bool StructurallyEqual(const Cmd& a, const Cmd& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      Overloaded{
          [&](const AssignCmd& x) {
            const auto& y = std::get<AssignCmd>(b.node);
            return x.target == y.target && StructurallyEqual(*x.value, *y.value);
          },
          [&](const IndexAssignCmd& x) {
            const auto& y = std::get<IndexAssignCmd>(b.node);
            return x.target == y.target &&
                   StructurallyEqual(*x.index, *y.index) &&
                   StructurallyEqual(*x.value, *y.value);
          },
          [&](const LengthAssignCmd& x) {
            const auto& y = std::get<LengthAssignCmd>(b.node);
            return x.target == y.target &&
                   OptionalExprEqual(x.element, y.element) &&
                   StructurallyEqual(*x.length, *y.length);
          },
          [&](const LaplaceCmd& x) {
            const auto& y = std::get<LaplaceCmd>(b.node);
            return x.target == y.target && x.width == y.width &&
                   StructurallyEqual(*x.center, *y.center);
          },
          [&](const IfCmd& x) {
            const auto& y = std::get<IfCmd>(b.node);
            return StructurallyEqual(*x.cond, *y.cond) &&
                   StructurallyEqual(*x.then_branch, *y.then_branch) &&
                   StructurallyEqual(*x.else_branch, *y.else_branch);
          },
          [&](const WhileCmd& x) {
            const auto& y = std::get<WhileCmd>(b.node);
            return StructurallyEqual(*x.cond, *y.cond) &&
                   StructurallyEqual(*x.body, *y.body);
          },
          [&](const SeqCmd& x) {
            const auto& y = std::get<SeqCmd>(b.node);
            return StructurallyEqual(*x.first, *y.first) &&
                   StructurallyEqual(*x.second, *y.second);
          },
          [&](const SkipCmd&) { return true; },
          [&](const ExtInvokeCmd& x) {
            const auto& y = std::get<ExtInvokeCmd>(b.node);
            return x.name == y.name && ParamListEqual(x.params, y.params);
          },
          [&](const PlaceholderCmd& x) {
            return x.name == std::get<PlaceholderCmd>(b.node).name;
          },
          [&](const HintedCmd& x) {
            const auto& y = std::get<HintedCmd>(b.node);
            return x.hint.extension == y.hint.extension &&
                   ParamListEqual(x.hint.params, y.hint.params) &&
                   StructurallyEqual(*x.body, *y.body);
          },
      },
      a.node);
}

std::vector<CmdPtr> FlattenSeq(const CmdPtr& cmd) {
  std::vector<CmdPtr> out;
  std::vector<CmdPtr> stack{cmd};
  while (!stack.empty()) {
    CmdPtr c = stack.back();
    stack.pop_back();
    if (const auto* seq = std::get_if<SeqCmd>(&c->node)) {
      stack.push_back(seq->second);
      stack.push_back(seq->first);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

ExprPtr ParamAsExpr(const Param& param) {
  if (const auto* e = std::get_if<ExprParam>(&param)) return e->expr;
  if (const auto* v = std::get_if<VarParam>(&param)) return MakeVar(v->name);
  if (const auto* l = std::get_if<LitParam>(&param)) return MakeLit(l->value);
  return nullptr;
}

std::optional<Literal> AsLiteral(const Expr& e) {
  if (const auto* lit = std::get_if<LitExpr>(&e.node)) return lit->value;
  return std::nullopt;
}

}  // namespace dpimp
