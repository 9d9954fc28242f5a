#include "dpimp/printer.h"

#include <charconv>
#include <cmath>
#include <sstream>

namespace dpimp {

namespace {

// Binding strength; larger binds tighter.
int Precedence(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
    switch (b->op) {
      case BinaryOp::kOr:
        return 1;
      case BinaryOp::kAnd:
        return 2;
      case BinaryOp::kAdd:
      case BinaryOp::kSub:
        return 4;
      case BinaryOp::kMul:
      case BinaryOp::kDiv:
        return 5;
      default:
        return 3;
    }
  }
  if (std::holds_alternative<NotExpr>(e.node)) return 6;
  if (const auto* l = std::get_if<LitExpr>(&e.node)) {
    // Negative literals print with a leading minus, like a unary operator.
    auto n = LiteralNumber(l->value);
    if (n && std::signbit(*n)) return 6;
  }
  return 7;
}

std::string FormatDouble(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string Wrap(const Expr& e, bool parens) {
  std::string s = PrintExpr(e);
  return parens ? "(" + s + ")" : s;
}

std::string CompactCmd(const Cmd& c);

std::string ParamList(const std::vector<Param>& params) {
  std::string out;
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += PrintParam(params[i]);
  }
  return out;
}

std::string AssignText(const Cmd& c) {
  return std::visit(
      Overloaded{
          [](const AssignCmd& x) {
            return x.target + " = " + PrintExpr(*x.value) + ";";
          },
          [](const IndexAssignCmd& x) {
            return x.target + "[" + PrintExpr(*x.index) +
                   "] = " + PrintExpr(*x.value) + ";";
          },
          [](const LengthAssignCmd& x) {
            std::string lhs = x.target;
            if (x.element) lhs += "[" + PrintExpr(*x.element) + "]";
            return lhs + ".length = " + PrintExpr(*x.length) + ";";
          },
          [](const LaplaceCmd& x) {
            return x.target + " $= lap(" + FormatDouble(x.width) + ", " +
                   PrintExpr(*x.center) + ");";
          },
          [](const SkipCmd&) { return std::string("skip;"); },
          [](const ExtInvokeCmd& x) {
            return x.name + "(" + ParamList(x.params) + ");";
          },
          [](const PlaceholderCmd& x) { return x.name + ";"; },
          [](const auto&) { return std::string(); },
      },
      c.node);
}

std::string CompactCmd(const Cmd& c) {
  if (const auto* seq = std::get_if<SeqCmd>(&c.node)) {
    return CompactCmd(*seq->first) + " " + CompactCmd(*seq->second);
  }
  if (const auto* x = std::get_if<IfCmd>(&c.node)) {
    std::string s = "if " + PrintExpr(*x->cond) + " then " +
                    CompactCmd(*x->then_branch);
    if (!std::holds_alternative<SkipCmd>(x->else_branch->node)) {
      s += " else " + CompactCmd(*x->else_branch);
    }
    return s + " end;";
  }
  if (const auto* x = std::get_if<WhileCmd>(&c.node)) {
    return "while " + PrintExpr(*x->cond) + " do " + CompactCmd(*x->body) +
           " end;";
  }
  if (const auto* x = std::get_if<HintedCmd>(&c.node)) {
    return CompactCmd(*x->body);
  }
  return AssignText(c);
}

class BlockPrinter {
 public:
  void Print(const Cmd& c, int indent) {
    std::visit(
        Overloaded{
            [&](const SeqCmd& x) {
              Print(*x.first, indent);
              Print(*x.second, indent);
            },
            [&](const IfCmd& x) {
              Line(indent, "if " + PrintExpr(*x.cond) + " then");
              Print(*x.then_branch, indent + 1);
              Line(indent, "else");
              Print(*x.else_branch, indent + 1);
              Line(indent, "end;");
            },
            [&](const WhileCmd& x) {
              Line(indent, "while " + PrintExpr(*x.cond) + " do");
              Print(*x.body, indent + 1);
              Line(indent, "end;");
            },
            [&](const HintedCmd& x) {
              Line(indent, "# expanded: " + x.hint.extension + "(" +
                               ParamList(x.hint.params) + ")");
              Print(*x.body, indent);
              Line(indent, "# end " + x.hint.extension);
            },
            [&](const auto&) { Line(indent, AssignText(c)); },
        },
        c.node);
  }

  std::string Take() {
    std::string s = out_.str();
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
  }

 private:
  void Line(int indent, const std::string& text) {
    out_ << std::string(2 * indent, ' ') << text << "\n";
  }
  std::ostringstream out_;
};

}  // namespace

std::string PrintLiteral(const Literal& lit) {
  return std::visit(
      Overloaded{
          [](int64_t v) { return std::to_string(v); },
          [](double v) { return FormatDouble(v); },
          [](bool v) { return std::string(v ? "true" : "false"); },
      },
      lit);
}

std::string PrintExpr(const Expr& e) {
  return std::visit(
      Overloaded{
          [](const VarExpr& x) { return x.name; },
          [](const LitExpr& x) { return PrintLiteral(x.value); },
          [&](const BinaryExpr& x) {
            int p = Precedence(e);
            int lp = Precedence(*x.lhs);
            int rp = Precedence(*x.rhs);
            bool cmp = IsComparison(x.op);
            bool lparen = cmp ? lp <= p : lp < p;
            bool rparen = rp <= p;
            return Wrap(*x.lhs, lparen) + " " +
                   std::string(BinaryOpSymbol(x.op)) + " " +
                   Wrap(*x.rhs, rparen);
          },
          [](const NotExpr& x) {
            return "!" + Wrap(*x.operand, Precedence(*x.operand) < 6);
          },
          [](const IndexExpr& x) {
            return Wrap(*x.base, Precedence(*x.base) < 7) + "[" +
                   PrintExpr(*x.index) + "]";
          },
          [](const LengthExpr& x) {
            return Wrap(*x.base, Precedence(*x.base) < 7) + ".length";
          },
          [](const BuiltinExpr& x) {
            if (x.name == "bag") return std::string("{}");
            if (x.name == "zeros") return "zeros[" + PrintExpr(*x.args[0]) + "]";
            std::string s = x.name + "(";
            for (size_t i = 0; i < x.args.size(); ++i) {
              if (i) s += ", ";
              s += PrintExpr(*x.args[i]);
            }
            return s + ")";
          },
      },
      e.node);
}

std::string PrintParam(const Param& p) {
  return std::visit(
      Overloaded{
          [](const ExprParam& x) { return PrintExpr(*x.expr); },
          [](const CmdParam& x) { return CompactCmd(*x.cmd); },
          [](const VarParam& x) { return x.name; },
          [](const LitParam& x) { return PrintLiteral(x.value); },
      },
      p);
}

std::string PrettyPrint(const Cmd& c) {
  BlockPrinter printer;
  printer.Print(c, 0);
  return printer.Take();
}

std::string PrettyPrint(const Program& p) {
  std::ostringstream out;
  for (const auto& d : p.declarations) {
    out << d.name << " : " << d.shape.ToString();
    if (!d.sensitivity.is_zero()) out << " @ " << d.sensitivity.ToString();
    out << ";\n";
  }
  for (const auto& ext : p.extensions) {
    out << "\nextension " << ext.name << "(";
    for (size_t i = 0; i < ext.formals.size(); ++i) {
      if (i) out << ", ";
      out << ext.formals[i];
    }
    out << ") {\n";
    BlockPrinter body;
    body.Print(*ext.body, 1);
    out << body.Take() << "\n}\n";
  }
  if (!p.declarations.empty() || !p.extensions.empty()) out << "\n";
  out << PrettyPrint(*p.main) << "\n";
  return out.str();
}

}  // namespace dpimp
