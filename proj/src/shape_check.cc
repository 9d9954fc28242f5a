#include "dpimp/shape_check.h"

#include <optional>

namespace dpimp {
namespace {

[[noreturn]] void Fail(const std::string& msg, SourceLoc loc) {
  throw ShapeError(msg, loc);
}

bool IsEmptyBag(const Expr& e) {
  const auto* b = std::get_if<BuiltinExpr>(&e.node);
  return b != nullptr && b->name == "bag";
}

Shape Numeric(const Expr& e, const ShapeEnv& env, const char* what) {
  Shape s = ShapeOf(e, env);
  if (!s.is_numeric()) {
    Fail(std::string(what) + " expects a number, got " + s.ToString(), e.loc);
  }
  return s;
}

void ExpectInt(const Expr& e, const ShapeEnv& env, const char* what) {
  Shape s = ShapeOf(e, env);
  if (s.kind() != Shape::Kind::kInt) {
    Fail(std::string(what) + " must be an int, got " + s.ToString(), e.loc);
  }
}

Shape NumericVector(const Expr& e, const ShapeEnv& env, const char* what) {
  Shape s = ShapeOf(e, env);
  if (s.kind() != Shape::Kind::kVector || !s.elem().is_numeric()) {
    Fail(std::string(what) + " expects a numeric vector, got " + s.ToString(),
         e.loc);
  }
  return s;
}

const Shape& VarShape(const std::string& name, const ShapeEnv& env,
                      SourceLoc loc) {
  auto it = env.find(name);
  if (it == env.end()) Fail("undeclared variable '" + name + "'", loc);
  return it->second;
}

Shape BuiltinShape(const BuiltinExpr& b, const ShapeEnv& env, SourceLoc loc) {
  const std::string& f = b.name;
  auto arity = BuiltinArity(f);
  if (!arity) Fail("unknown builtin '" + f + "'", loc);
  if (static_cast<int>(b.args.size()) != *arity) {
    Fail(f + " takes " + std::to_string(*arity) + " argument(s)", loc);
  }
  if (f == "bag") Fail("the empty bag needs a declared target", loc);
  if (f == "fc" || f == "exp" || f == "log") {
    Numeric(*b.args[0], env, f.c_str());
    return Shape::Float();
  }
  if (f == "floor") {
    Numeric(*b.args[0], env, "floor");
    return Shape::Int();
  }
  if (f == "clip") {
    Numeric(*b.args[0], env, "clip");
    Numeric(*b.args[1], env, "clip");
    return Shape::Float();
  }
  if (f == "dot") {
    NumericVector(*b.args[0], env, "dot");
    NumericVector(*b.args[1], env, "dot");
    return Shape::Float();
  }
  if (f == "scale") {
    Numeric(*b.args[0], env, "scale");
    NumericVector(*b.args[1], env, "scale");
    return Shape::Vector(Shape::Float());
  }
  // zeros
  ExpectInt(*b.args[0], env, "zeros length");
  return Shape::Vector(Shape::Float());
}

// Checks that `e` can be stored into a slot of shape `dst`.
void CheckStore(const Expr& e, const Shape& dst, const ShapeEnv& env,
                const std::string& what) {
  if (IsEmptyBag(e)) {
    if (dst.kind() != Shape::Kind::kBag) {
      Fail("cannot store {} into " + what + " of shape " + dst.ToString(),
           e.loc);
    }
    return;
  }
  Shape src = ShapeOf(e, env);
  if (!Assignable(src, dst)) {
    Fail("cannot store " + src.ToString() + " into " + what + " of shape " +
             dst.ToString(),
         e.loc);
  }
}

}  // namespace

bool Assignable(const Shape& src, const Shape& dst) {
  if (src == dst) return true;
  if (src.kind() == Shape::Kind::kInt && dst.kind() == Shape::Kind::kFloat) {
    return true;
  }
  if (src.is_collection() && src.kind() == dst.kind()) {
    return Assignable(src.elem(), dst.elem());
  }
  return false;
}

Shape ShapeOf(const Expr& e, const ShapeEnv& env) {
  return std::visit(
      Overloaded{
          [&](const VarExpr& x) { return VarShape(x.name, env, e.loc); },
          [&](const LitExpr& x) {
            return std::visit(
                Overloaded{[](int64_t) { return Shape::Int(); },
                           [](double) { return Shape::Float(); },
                           [](bool) { return Shape::Bool(); }},
                x.value);
          },
          [&](const BinaryExpr& x) -> Shape {
            std::string op(BinaryOpSymbol(x.op));
            if (IsLogical(x.op)) {
              for (const auto& side : {x.lhs, x.rhs}) {
                if (ShapeOf(*side, env).kind() != Shape::Kind::kBool) {
                  Fail("operands of " + op + " must be bool", side->loc);
                }
              }
              return Shape::Bool();
            }
            if (x.op == BinaryOp::kEq) {
              Shape l = ShapeOf(*x.lhs, env);
              Shape r = ShapeOf(*x.rhs, env);
              bool ok = (l.is_numeric() && r.is_numeric()) ||
                        (l.kind() == Shape::Kind::kBool && l == r);
              if (!ok) {
                Fail("cannot compare " + l.ToString() + " with " + r.ToString(),
                     e.loc);
              }
              return Shape::Bool();
            }
            Shape l = Numeric(*x.lhs, env, op.c_str());
            Shape r = Numeric(*x.rhs, env, op.c_str());
            if (IsComparison(x.op)) return Shape::Bool();
            if (l.kind() == Shape::Kind::kFloat ||
                r.kind() == Shape::Kind::kFloat) {
              return Shape::Float();
            }
            return Shape::Int();
          },
          [&](const NotExpr& x) {
            if (ShapeOf(*x.operand, env).kind() != Shape::Kind::kBool) {
              Fail("operand of ! must be bool", x.operand->loc);
            }
            return Shape::Bool();
          },
          [&](const IndexExpr& x) {
            Shape base = ShapeOf(*x.base, env);
            if (!base.is_collection()) {
              Fail("cannot index a value of shape " + base.ToString(), e.loc);
            }
            ExpectInt(*x.index, env, "index");
            return base.elem();
          },
          [&](const LengthExpr& x) {
            if (!IsEmptyBag(*x.base)) {
              Shape base = ShapeOf(*x.base, env);
              if (!base.is_collection()) {
                Fail("length of a value of shape " + base.ToString(), e.loc);
              }
            }
            return Shape::Int();
          },
          [&](const BuiltinExpr& x) { return BuiltinShape(x, env, e.loc); },
      },
      e.node);
}

void ShapeCheck(const Cmd& c, const ShapeEnv& env) {
  std::visit(
      Overloaded{
          [&](const AssignCmd& x) {
            CheckStore(*x.value, VarShape(x.target, env, c.loc), env,
                       "'" + x.target + "'");
          },
          [&](const IndexAssignCmd& x) {
            const Shape& t = VarShape(x.target, env, c.loc);
            if (!t.is_collection()) {
              Fail("cannot index-assign '" + x.target + "' of shape " +
                       t.ToString(),
                   c.loc);
            }
            ExpectInt(*x.index, env, "index");
            CheckStore(*x.value, t.elem(), env,
                       "an element of '" + x.target + "'");
          },
          [&](const LengthAssignCmd& x) {
            const Shape& t = VarShape(x.target, env, c.loc);
            if (!t.is_collection()) {
              Fail("'" + x.target + "' has no length", c.loc);
            }
            if (x.element) {
              ExpectInt(*x.element, env, "index");
              if (!t.elem().is_collection()) {
                Fail("elements of '" + x.target + "' have no length", c.loc);
              }
            }
            ExpectInt(*x.length, env, "length");
          },
          [&](const LaplaceCmd& x) {
            const Shape& t = VarShape(x.target, env, c.loc);
            if (t.kind() != Shape::Kind::kFloat) {
              Fail("Laplace target '" + x.target + "' must be a float", c.loc);
            }
            Numeric(*x.center, env, "lap");
          },
          [&](const IfCmd& x) {
            if (ShapeOf(*x.cond, env).kind() != Shape::Kind::kBool) {
              Fail("if guard must be bool", x.cond->loc);
            }
            ShapeCheck(*x.then_branch, env);
            ShapeCheck(*x.else_branch, env);
          },
          [&](const WhileCmd& x) {
            if (ShapeOf(*x.cond, env).kind() != Shape::Kind::kBool) {
              Fail("while guard must be bool", x.cond->loc);
            }
            ShapeCheck(*x.body, env);
          },
          [&](const SeqCmd& x) {
            ShapeCheck(*x.first, env);
            ShapeCheck(*x.second, env);
          },
          [&](const SkipCmd&) {},
          [&](const ExtInvokeCmd& x) {
            Fail("unexpanded extension '" + x.name + "'", c.loc);
          },
          [&](const PlaceholderCmd& x) {
            Fail("unbound command parameter '" + x.name + "'", c.loc);
          },
          [&](const HintedCmd& x) { ShapeCheck(*x.body, env); },
      },
      c.node);
}

}  // namespace dpimp
