#include "dpimp/type_expr.h"

#include <cmath>
#include <string>

namespace dpimp {
namespace {

ExtReal Approx(const ExtReal& s, const ExtReal& t) {
  return s.is_zero() && t.is_zero() ? ExtReal::Zero() : ExtReal::Infinity();
}

// |k| for a numeric literal expression.
std::optional<ExtReal> LiteralMagnitude(const Expr& e) {
  auto lit = AsLiteral(e);
  if (!lit) return std::nullopt;
  auto n = LiteralNumber(*lit);
  if (!n || !std::isfinite(*n)) return std::nullopt;
  if (std::holds_alternative<int64_t>(*lit)) {
    int64_t v = std::get<int64_t>(*lit);
    if (v == INT64_MIN) return ExtReal(std::fabs(*n));
    return ExtReal(Rational(v < 0 ? -v : v));
  }
  return ExtReal::FromDouble(std::fabs(*n));
}

class ExprTyper {
 public:
  ExprTyper(const TypingContext& ctx, TypingMode mode)
      : ctx_(ctx), mode_(mode) {}

  ExprType Type(const Expr& e) {
    return std::visit([&](const auto& node) { return Visit(node, e); },
                      e.node);
  }

 private:
  bool strict() const { return mode_ != TypingMode::kTerminating; }

  // In strict modes a failed premise is an error; otherwise the expression
  // just becomes infinitely sensitive.
  ExprType Violation(const std::string& msg, const std::string& premise,
                     SourceLoc loc, Shape shape) {
    if (strict()) throw TypeError(msg, loc, premise);
    return {ExtReal::Infinity(), std::move(shape)};
  }

  ExprType Visit(const VarExpr& x, const Expr& e) {
    if (!ctx_.Has(x.name)) {
      throw TypeError("undeclared variable '" + x.name + "'", e.loc, "Var");
    }
    return {ctx_.sens(x.name), ctx_.shape(x.name)};
  }

  ExprType Visit(const LitExpr& x, const Expr&) {
    Shape shape = std::visit(Overloaded{[](int64_t) { return Shape::Int(); },
                                        [](double) { return Shape::Float(); },
                                        [](bool) { return Shape::Bool(); }},
                             x.value);
    return {ExtReal::Zero(), shape};
  }

  ExprType Visit(const BinaryExpr& x, const Expr& e) {
    ExprType l = Type(*x.lhs);
    ExprType r = Type(*x.rhs);
    if (IsComparison(x.op) || IsLogical(x.op)) {
      return {Approx(l.sens, r.sens), Shape::Bool()};
    }
    bool is_float = l.shape.kind() == Shape::Kind::kFloat ||
                    r.shape.kind() == Shape::Kind::kFloat;
    Shape shape = is_float ? Shape::Float() : Shape::Int();
    switch (x.op) {
      case BinaryOp::kAdd:
      case BinaryOp::kSub:
        return {l.sens + r.sens, shape};
      case BinaryOp::kMul:
        if (auto k = LiteralMagnitude(*x.lhs)) return {*k * r.sens, shape};
        if (auto k = LiteralMagnitude(*x.rhs)) return {*k * l.sens, shape};
        return {Approx(l.sens, r.sens), shape};
      case BinaryOp::kDiv: {
        if (r.sens.is_positive()) {
          return Violation("divisor must be 0-sensitive", "Div-Divisor", e.loc,
                           shape);
        }
        auto k = LiteralMagnitude(*x.rhs);
        // Truncating integer division is not 1/|k|-Lipschitz.
        if (is_float && k && k->is_positive()) {
          return {ExtReal::Divide(l.sens, *k), shape};
        }
        return {Approx(l.sens, r.sens), shape};
      }
      default:
        break;
    }
    throw TypeError("unsupported operator", e.loc);
  }

  ExprType Visit(const NotExpr& x, const Expr&) {
    ExprType t = Type(*x.operand);
    return {Approx(t.sens, ExtReal::Zero()), Shape::Bool()};
  }

  ExprType Visit(const IndexExpr& x, const Expr& e) {
    ExprType base = Type(*x.base);
    ExprType index = Type(*x.index);
    const Shape& elem = base.shape.elem();
    if (base.shape.kind() == Shape::Kind::kBag) {
      if (base.sens.is_positive()) {
        return Violation("cannot index a sensitive bag", "Bag-Index", e.loc,
                         elem);
      }
      if (index.sens.is_positive()) {
        return Violation("index must be 0-sensitive", "Bag-Index", e.loc,
                         elem);
      }
      return {ExtReal::Infinity(), elem};
    }
    if (base.sens.is_infinite()) {
      return Violation("cannot index an infinitely sensitive vector",
                       "Vector-Index", e.loc, elem);
    }
    if (index.sens.is_positive()) {
      return Violation("index must be 0-sensitive", "Vector-Index", e.loc,
                       elem);
    }
    return {base.sens, elem};
  }

  ExprType Visit(const LengthExpr& x, const Expr&) {
    ExprType base = Type(*x.base);
    if (base.shape.kind() == Shape::Kind::kBag) {
      return {base.sens, Shape::Int()};
    }
    return {base.sens.is_finite() ? ExtReal::Zero() : ExtReal::Infinity(),
            Shape::Int()};
  }

  ExprType Visit(const BuiltinExpr& x, const Expr& e) {
    const std::string& f = x.name;
    if (f == "bag") return {ExtReal::Zero(), Shape::Bag(Shape::Int())};
    std::vector<ExprType> args;
    for (const auto& a : x.args) args.push_back(Type(*a));
    ExtReal all = ExtReal::Zero();
    for (const auto& a : args) all = Approx(all, a.sens);
    if (f == "fc") return {args[0].sens, Shape::Float()};
    if (f == "clip") {
      if (args[1].sens.is_positive()) return {all, Shape::Float()};
      auto k = LiteralMagnitude(*x.args[1]);
      auto lit = AsLiteral(*x.args[1]);
      bool nonneg = lit && LiteralNumber(*lit) && *LiteralNumber(*lit) >= 0;
      if (k && nonneg && mode_ != TypingMode::kLinear) {
        return {ExtReal::Min(args[0].sens, ExtReal::Times(2, *k)),
                Shape::Float()};
      }
      return {args[0].sens, Shape::Float()};
    }
    if (f == "log" && args[0].sens.is_positive()) {
      return Violation("log argument must be 0-sensitive", "Log-Domain", e.loc,
                       Shape::Float());
    }
    if (f == "exp" || f == "log") return {all, Shape::Float()};
    if (f == "floor") return {all, Shape::Int()};
    if (f == "dot") {
      for (const auto& a : args) {
        if (a.sens.is_infinite()) {
          return Violation("dot needs vectors of equal length",
                           "Dot-Length", e.loc, Shape::Float());
        }
      }
      return {all, Shape::Float()};
    }
    if (f == "scale") return {all, Shape::Vector(Shape::Float())};
    if (f == "zeros") {
      if (args[0].sens.is_positive()) {
        return Violation("zeros length must be 0-sensitive", "Zeros-Length",
                         e.loc, Shape::Vector(Shape::Float()));
      }
      return {ExtReal::Zero(), Shape::Vector(Shape::Float())};
    }
    throw TypeError("unknown builtin '" + f + "'", e.loc);
  }

  const TypingContext& ctx_;
  TypingMode mode_;
};

}  // namespace

ExprType TypeExpr(const TypingContext& ctx, const Expr& e, TypingMode mode) {
  return ExprTyper(ctx, mode).Type(e);
}

}  // namespace dpimp
