#include "dpimp/interpreter.h"

#include <cmath>
#include <limits>

namespace dpimp {

namespace {

struct Diverge {
  std::string reason;
  SourceLoc loc;
};

[[noreturn]] void Crash(const std::string& reason, SourceLoc loc) {
  throw EvalError(reason, loc);
}

int64_t CheckedInt(__int128 v, SourceLoc loc) {
  if (v > std::numeric_limits<int64_t>::max() ||
      v < std::numeric_limits<int64_t>::min()) {
    Crash("integer overflow", loc);
  }
  return static_cast<int64_t>(v);
}

double CheckedFloat(double v, SourceLoc loc) {
  if (!std::isfinite(v)) Crash("non-finite float result", loc);
  return v;
}

double Number(const Value& v, SourceLoc loc) {
  if (v.is_int()) return static_cast<double>(v.as_int());
  if (v.is_float()) return v.as_float();
  Crash("expected a number, got " + ToString(v), loc);
}

bool Truth(const Value& v, SourceLoc loc) {
  if (!v.is_bool()) Crash("expected a bool, got " + ToString(v), loc);
  return v.as_bool();
}

int64_t IntOf(const Value& v, SourceLoc loc) {
  if (!v.is_int()) Crash("expected an int, got " + ToString(v), loc);
  return v.as_int();
}

const std::vector<Value>& ElemsOf(const Value& v, SourceLoc loc) {
  if (!v.is_collection()) Crash("expected a collection, got " + ToString(v), loc);
  return v.elems();
}

Value Arithmetic(BinaryOp op, const Value& a, const Value& b, SourceLoc loc) {
  if (a.is_int() && b.is_int()) {
    __int128 x = a.as_int(), y = b.as_int();
    switch (op) {
      case BinaryOp::kAdd:
        return Value::Int(CheckedInt(x + y, loc));
      case BinaryOp::kSub:
        return Value::Int(CheckedInt(x - y, loc));
      case BinaryOp::kMul:
        return Value::Int(CheckedInt(x * y, loc));
      case BinaryOp::kDiv:
        if (y == 0) Crash("division by zero", loc);
        return Value::Int(CheckedInt(x / y, loc));
      default:
        break;
    }
  }
  double x = Number(a, loc), y = Number(b, loc);
  switch (op) {
    case BinaryOp::kAdd:
      return Value::Float(CheckedFloat(x + y, loc));
    case BinaryOp::kSub:
      return Value::Float(CheckedFloat(x - y, loc));
    case BinaryOp::kMul:
      return Value::Float(CheckedFloat(x * y, loc));
    case BinaryOp::kDiv:
      if (y == 0) Crash("division by zero", loc);
      return Value::Float(CheckedFloat(x / y, loc));
    default:
      break;
  }
  Crash("not an arithmetic operator", loc);
}

bool Compare(BinaryOp op, const Value& a, const Value& b, SourceLoc loc) {
  if (op == BinaryOp::kEq && a.is_bool() && b.is_bool()) {
    return a.as_bool() == b.as_bool();
  }
  if (a.is_int() && b.is_int()) {
    int64_t x = a.as_int(), y = b.as_int();
    switch (op) {
      case BinaryOp::kLt:
        return x < y;
      case BinaryOp::kLe:
        return x <= y;
      case BinaryOp::kGt:
        return x > y;
      case BinaryOp::kGe:
        return x >= y;
      default:
        return x == y;
    }
  }
  double x = Number(a, loc), y = Number(b, loc);
  switch (op) {
    case BinaryOp::kLt:
      return x < y;
    case BinaryOp::kLe:
      return x <= y;
    case BinaryOp::kGt:
      return x > y;
    case BinaryOp::kGe:
      return x >= y;
    default:
      return x == y;
  }
}

class Machine {
 public:
  Machine(const ShapeEnv& shapes, ProgramState& state, Rng* rng, int64_t fuel)
      : shapes_(shapes), state_(state), rng_(rng), fuel_(fuel) {}

  // Evaluates `e`, returning a reference into the store when `e` names a
  // variable or an element of one, and into `scratch` otherwise.
  const Value& Ref(const Expr& e, Value& scratch) const {
    if (const auto* v = std::get_if<VarExpr>(&e.node)) return Lookup(v->name, e.loc);
    if (const auto* x = std::get_if<IndexExpr>(&e.node)) {
      Value base_scratch;
      const Value& base = Ref(*x->base, base_scratch);
      if (&base == &base_scratch) {
        scratch = Element(base, Eval(*x->index), e.loc);
        return scratch;
      }
      return Element(base, Eval(*x->index), e.loc);
    }
    scratch = Eval(e);
    return scratch;
  }

  Value Eval(const Expr& e) const {
    SourceLoc loc = e.loc;
    return std::visit(
        Overloaded{
            [&](const VarExpr& x) { return Lookup(x.name, loc); },
            [&](const LitExpr& x) {
              return std::visit([](auto v) { return Value{v}; }, x.value);
            },
            [&](const BinaryExpr& x) {
              Value a = Eval(*x.lhs);
              Value b = Eval(*x.rhs);
              if (IsArithmetic(x.op)) return Arithmetic(x.op, a, b, loc);
              if (IsLogical(x.op)) {
                bool p = Truth(a, loc), q = Truth(b, loc);
                return Value::Bool(x.op == BinaryOp::kAnd ? p && q : p || q);
              }
              return Value::Bool(Compare(x.op, a, b, loc));
            },
            [&](const NotExpr& x) {
              return Value::Bool(!Truth(Eval(*x.operand), loc));
            },
            [&](const IndexExpr&) {
              Value scratch;
              const Value& r = Ref(e, scratch);
              return &r == &scratch ? std::move(scratch) : r;
            },
            [&](const LengthExpr& x) {
              Value scratch;
              const Value& base = Ref(*x.base, scratch);
              return Value::Int(
                  static_cast<int64_t>(ElemsOf(base, loc).size()));
            },
            [&](const BuiltinExpr& x) { return Builtin(x, loc); },
        },
        e.node);
  }

  void Exec(const Cmd& c) {
    SourceLoc loc = c.loc;
    std::visit(
        Overloaded{
            [&](const AssignCmd& x) {
              Store(x.target, CoerceToShape(Eval(*x.value), ShapeOf(x.target, loc)),
                    loc);
            },
            [&](const IndexAssignCmd& x) {
              int64_t i = IntOf(Eval(*x.index), loc);
              Value v = Eval(*x.value);
              Value& target = MutableLookup(x.target, loc);
              auto& elems = MutableElems(target, loc);
              if (i < 0 || i >= static_cast<int64_t>(elems.size())) {
                Crash("index " + std::to_string(i) + " out of bounds for '" +
                          x.target + "' of length " +
                          std::to_string(elems.size()),
                      loc);
              }
              elems[i] = CoerceToShape(v, ShapeOf(x.target, loc).elem());
            },
            [&](const LengthAssignCmd& x) {
              std::optional<int64_t> element;
              if (x.element) element = IntOf(Eval(*x.element), loc);
              int64_t n = IntOf(Eval(*x.length), loc);
              const Shape& shape = ShapeOf(x.target, loc);
              Value* target = &MutableLookup(x.target, loc);
              const Shape* target_shape = &shape;
              if (element) {
                auto& outer = MutableElems(*target, loc);
                if (*element < 0 ||
                    *element >= static_cast<int64_t>(outer.size())) {
                  Crash("index " + std::to_string(*element) +
                            " out of bounds for '" + x.target + "'",
                        loc);
                }
                target = &outer[*element];
                target_shape = &shape.elem();
              }
              if (n < 0) throw Diverge{"negative length assignment", loc};
              if (!target_shape->is_collection()) {
                Crash("length assignment to a scalar", loc);
              }
              auto& elems = MutableElems(*target, loc);
              elems.resize(static_cast<size_t>(n),
                           DefaultValue(target_shape->elem()));
            },
            [&](const LaplaceCmd& x) {
              double center = Number(Eval(*x.center), loc);
              if (!rng_) Crash("no random source", loc);
              double draw = SampleLaplace(center, x.width, *rng_);
              Store(x.target,
                    CoerceToShape(Value::Float(draw), ShapeOf(x.target, loc)),
                    loc);
            },
            [&](const IfCmd& x) {
              if (Truth(Eval(*x.cond), loc)) {
                Exec(*x.then_branch);
              } else {
                Exec(*x.else_branch);
              }
            },
            [&](const WhileCmd& x) {
              int64_t iterations = 0;
              while (Truth(Eval(*x.cond), loc)) {
                if (++iterations > fuel_) {
                  throw Diverge{"loop ran out of fuel", loc};
                }
                Exec(*x.body);
              }
            },
            [&](const SeqCmd& x) {
              Exec(*x.first);
              Exec(*x.second);
            },
            [](const SkipCmd&) {},
            [&](const ExtInvokeCmd& x) {
              Crash("unexpanded extension '" + x.name + "'", loc);
            },
            [&](const PlaceholderCmd& x) {
              Crash("unbound placeholder '" + x.name + "'", loc);
            },
            [&](const HintedCmd& x) { Exec(*x.body); },
        },
        c.node);
  }

 private:
  const Value& Lookup(const std::string& name, SourceLoc loc) const {
    auto it = state_.find(name);
    if (it == state_.end()) Crash("unbound variable '" + name + "'", loc);
    return it->second;
  }

  Value& MutableLookup(const std::string& name, SourceLoc loc) {
    auto it = state_.find(name);
    if (it == state_.end()) Crash("unbound variable '" + name + "'", loc);
    return it->second;
  }

  static std::vector<Value>& MutableElems(Value& v, SourceLoc loc) {
    if (!v.is_collection()) Crash("expected a collection", loc);
    return v.mutable_elems();
  }

  const Shape& ShapeOf(const std::string& name, SourceLoc loc) const {
    auto it = shapes_.find(name);
    if (it == shapes_.end()) Crash("undeclared variable '" + name + "'", loc);
    return it->second;
  }

  void Store(const std::string& name, Value v, SourceLoc loc) {
    MutableLookup(name, loc) = std::move(v);
  }

  static const Value& Element(const Value& base, const Value& index,
                              SourceLoc loc) {
    const auto& elems = ElemsOf(base, loc);
    int64_t i = IntOf(index, loc);
    if (i < 0 || i >= static_cast<int64_t>(elems.size())) {
      Crash("index " + std::to_string(i) + " out of bounds for length " +
                std::to_string(elems.size()),
            loc);
    }
    return elems[i];
  }

  Value Builtin(const BuiltinExpr& x, SourceLoc loc) const {
    const std::string& f = x.name;
    if (f == "bag") return Value::Bag({});
    std::vector<Value> args;
    for (const auto& a : x.args) args.push_back(Eval(*a));
    if (f == "fc") return Value::Float(Number(args[0], loc));
    if (f == "clip") {
      double k = Number(args[1], loc);
      if (k < 0) Crash("clip bound must be non-negative", loc);
      double v = Number(args[0], loc);
      return Value::Float(std::max(-k, std::min(k, v)));
    }
    if (f == "exp") return Value::Float(CheckedFloat(std::exp(Number(args[0], loc)), loc));
    if (f == "log") {
      double v = Number(args[0], loc);
      if (!(v > 0)) Crash("log of a non-positive number", loc);
      return Value::Float(std::log(v));
    }
    if (f == "floor") {
      double v = std::floor(Number(args[0], loc));
      if (!(v >= -9.2e18 && v <= 9.2e18)) Crash("floor out of range", loc);
      return Value::Int(static_cast<int64_t>(v));
    }
    if (f == "dot") {
      const auto& xs = ElemsOf(args[0], loc);
      const auto& ys = ElemsOf(args[1], loc);
      if (xs.size() != ys.size()) Crash("dot of vectors of unequal length", loc);
      double total = 0;
      for (size_t i = 0; i < xs.size(); ++i) {
        total += Number(xs[i], loc) * Number(ys[i], loc);
      }
      return Value::Float(CheckedFloat(total, loc));
    }
    if (f == "scale") {
      double s = Number(args[0], loc);
      std::vector<Value> out;
      for (const auto& v : ElemsOf(args[1], loc)) {
        out.push_back(Value::Float(CheckedFloat(s * Number(v, loc), loc)));
      }
      return Value::Vec(std::move(out));
    }
    if (f == "zeros") {
      int64_t n = IntOf(args[0], loc);
      if (n < 0) Crash("zeros of negative length", loc);
      return Value::Vec(std::vector<Value>(n, Value::Float(0.0)));
    }
    Crash("unknown builtin '" + f + "'", loc);
  }

  const ShapeEnv& shapes_;
  ProgramState& state_;
  Rng* rng_;
  int64_t fuel_;
};

}  // namespace

std::string_view OutcomeName(ExecOutcome::Kind kind) {
  switch (kind) {
    case ExecOutcome::Kind::kFinal:
      return "final";
    case ExecOutcome::Kind::kDiverged:
      return "diverged";
    case ExecOutcome::Kind::kCrashed:
      return "crashed";
  }
  return "?";
}

Value Interpreter::EvalExpr(const ProgramState& state, const Expr& e) const {
  ProgramState& mutable_state = const_cast<ProgramState&>(state);
  return Machine(shapes_, mutable_state, nullptr, 0).Eval(e);
}

ExecOutcome Interpreter::Exec(ProgramState state, const Cmd& c,
                              const RunConfig& config) const {
  Rng rng(config.seed);
  return Exec(std::move(state), c, rng, config.fuel);
}

ExecOutcome Interpreter::Exec(ProgramState state, const Cmd& c, Rng& rng,
                              int64_t fuel) const {
  ExecOutcome out;
  try {
    Machine(shapes_, state, &rng, fuel).Exec(c);
    out.kind = ExecOutcome::Kind::kFinal;
    out.state = std::move(state);
  } catch (const Diverge& d) {
    out.kind = ExecOutcome::Kind::kDiverged;
    out.reason = d.reason;
    out.loc = d.loc;
  } catch (const EvalError& e) {
    out.kind = ExecOutcome::Kind::kCrashed;
    out.reason = e.message();
    out.loc = e.loc();
  }
  return out;
}

}  // namespace dpimp
