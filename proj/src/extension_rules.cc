#include "dpimp/extension_rules.h"

#include <cmath>
#include <set>

#include "dpimp/printer.h"
#include "dpimp/vars.h"

namespace dpimp {
namespace {

[[noreturn]] void Fail(const std::string& why) { throw RuleFailure(why); }

class Args {
 public:
  Args(const ExpansionHint& hint, const std::vector<std::string>& formals)
      : hint_(hint), formals_(formals) {
    if (hint.params.size() != formals.size()) {
      Fail(hint.extension + " expects " + std::to_string(formals.size()) +
           " parameters");
    }
  }

  const std::string& Var(size_t i) const {
    const auto* v = std::get_if<VarParam>(&hint_.params[i]);
    if (v == nullptr) Fail(formals_[i] + " must be a variable");
    return v->name;
  }

  const Cmd& Body(size_t i) const {
    const auto* c = std::get_if<CmdParam>(&hint_.params[i]);
    if (c == nullptr) Fail(formals_[i] + " must be a command");
    return *c->cmd;
  }

  const Literal& Lit(size_t i) const {
    const auto* l = std::get_if<LitParam>(&hint_.params[i]);
    if (l == nullptr) Fail(formals_[i] + " must be a literal");
    return l->value;
  }

  ExprPtr AsExpr(size_t i) const {
    if (const auto* e = std::get_if<ExprParam>(&hint_.params[i])) {
      return e->expr;
    }
    ExprPtr e = ParamAsExpr(hint_.params[i]);
    if (!e) Fail(formals_[i] + " must be an expression");
    return e;
  }

 private:
  const ExpansionHint& hint_;
  const std::vector<std::string>& formals_;
};

void RequireDistinct(const std::vector<std::string>& vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v).second) Fail("variable " + v + " passed twice");
  }
}

void RequireDeclared(const TypingContext& ctx,
                     const std::vector<std::string>& vars) {
  for (const auto& v : vars) {
    if (!ctx.Has(v)) Fail("undeclared variable " + v);
  }
}

void RequireShape(const TypingContext& ctx, const std::string& var,
                  Shape::Kind kind, const char* what) {
  if (ctx.shape(var).kind() != kind) Fail(var + " must be a " + what);
}

void RequireUnmodified(const VarSet& mvs,
                       const std::vector<std::string>& vars) {
  for (const auto& v : vars) {
    if (mvs.count(v)) Fail(v + " is modified by the body");
  }
}

void WidenAll(TypingContext& ctx, const VarSet& vars) {
  for (const auto& v : vars) ctx.Set(v, ExtReal::Infinity());
}

ExtReal LiteralValue(const Literal& lit, const std::string& formal) {
  auto n = LiteralNumber(lit);
  if (!n || !std::isfinite(*n)) Fail(formal + " must be a numeric literal");
  if (*n < 0) Fail(formal + " must be non-negative");
  if (std::holds_alternative<int64_t>(lit)) {
    return ExtReal(Rational(std::get<int64_t>(lit)));
  }
  return ExtReal::FromDouble(*n);
}

int64_t PositiveCount(const Literal& lit, const std::string& formal) {
  if (!std::holds_alternative<int64_t>(lit)) {
    Fail(formal + " must be an integer literal");
  }
  int64_t n = std::get<int64_t>(lit);
  if (n <= 0) Fail(formal + " must be positive");
  return n;
}

CmdTyping TypeOrFail(Checker& checker, const TypingContext& ctx, const Cmd& c,
                     TypingMode mode, const std::string& what) {
  try {
    return checker.TypeCmd(ctx, c, mode);
  } catch (const TypeError& e) {
    Fail(what + ": " + e.what());
  }
}

// Termination, determinism, non-interference with the loop variables and the
// two dependency judgments shared by bmap, vmap and partition.
VarSet CheckMapBody(Checker& checker, const TypingContext& ctx, const Cmd& c,
                    const std::string& t_in, const std::string& t_out,
                    const std::vector<std::string>& unmodified,
                    const std::vector<std::string>& sigma) {
  if (AuxVerdict v = CheckTerm(ctx, c, checker.options().term_policy); !v) {
    Fail("body may not terminate (" + v.failing_premise + " at " +
         v.loc.ToString() + ")");
  }
  if (AuxVerdict v = CheckDeterm(c); !v) {
    Fail("body is not deterministic (" + v.failing_premise + " at " +
         v.loc.ToString() + ")");
  }
  VarSet mvs = ModifiedVars(c);
  RequireUnmodified(mvs, unmodified);

  TypingContext base = ctx;
  WidenAll(base, mvs);
  for (const auto& v : sigma) base.Set(v, ExtReal::Infinity());

  TypingContext a = base;
  a.Set(t_in, ExtReal::Zero());
  CmdTyping g1 = TypeOrFail(checker, Stretch(a), c, TypingMode::kTerminating,
                            "dependency judgment with t_in 0-sensitive");
  if (!g1.ctx.Has(t_out) || g1.ctx.sens(t_out).is_positive()) {
    Fail(t_out + " depends on more than " + t_in);
  }

  TypingContext b = base;
  b.Set(t_in, ExtReal::Infinity());
  CmdTyping g2 = TypeOrFail(checker, Stretch(b), c, TypingMode::kTerminating,
                            "dependency judgment with t_in sensitive");
  for (const auto& x : mvs) {
    if (x != t_out && g2.ctx.sens(x).is_positive()) {
      Fail(x + " still depends on " + t_in + " after the body");
    }
  }
  return mvs;
}

CmdTyping RuleMap(Checker& checker, const TypingContext& ctx,
                  const ExpansionHint& hint, bool vector) {
  static const std::vector<std::string> kFormals = {"in", "out", "t_in",
                                                    "i", "t_out", "c"};
  Args args(hint, kFormals);
  const std::string& in = args.Var(0);
  const std::string& out = args.Var(1);
  const std::string& t_in = args.Var(2);
  const std::string& i = args.Var(3);
  const std::string& t_out = args.Var(4);
  const Cmd& c = args.Body(5);
  RequireDistinct({in, out, t_in, i, t_out});
  RequireDeclared(ctx, {in, out, t_in, i, t_out});
  Shape::Kind kind = vector ? Shape::Kind::kVector : Shape::Kind::kBag;
  const char* what = vector ? "vector" : "bag";
  RequireShape(ctx, in, kind, what);
  RequireShape(ctx, out, kind, what);

  VarSet mvs =
      CheckMapBody(checker, ctx, c, t_in, t_out, {t_in, in, out, i}, {i, in, out});

  ExtReal scale = ExtReal::One();
  if (vector) {
    TypingContext pre = ctx;
    WidenAll(pre, mvs);
    for (const auto& v : {i, in, out}) pre.Set(v, ExtReal::Infinity());
    pre.Set(t_in, ExtReal::One());
    LinearVerdict lin = CheckLinear(checker, pre, c);
    if (lin.verdict) {
      scale = lin.post.sens(t_out);
    } else {
      // Trivially linear after weakening the result to infinity.
      scale = ExtReal::Infinity();
      checker.Log({hint.extension, hint.loc, false,
                   "body not linear (" + lin.verdict.failing_premise +
                       "); output scale weakened to inf"});
    }
  }

  TypingContext result = ctx;
  result.Set(out, ctx.sens(in) * scale);
  WidenAll(result, mvs);
  for (const auto& v : {i, t_in, t_out}) result.Set(v, ExtReal::Infinity());
  return {std::move(result), {}};
}

CmdTyping RulePartition(Checker& checker, const TypingContext& ctx,
                        const ExpansionHint& hint) {
  static const std::vector<std::string> kFormals = {
      "in",    "out",     "t_in",   "i",      "t_out",
      "t_idx", "out_idx", "t_part", "nParts", "c"};
  Args args(hint, kFormals);
  const std::string& in = args.Var(0);
  const std::string& out = args.Var(1);
  const std::string& t_in = args.Var(2);
  const std::string& i = args.Var(3);
  const std::string& t_out = args.Var(4);
  const std::string& t_idx = args.Var(5);
  const std::string& out_idx = args.Var(6);
  const std::string& t_part = args.Var(7);
  ExprPtr n_parts = args.AsExpr(8);
  const Cmd& c = args.Body(9);
  RequireDistinct({in, out, t_in, i, t_out, t_idx, out_idx, t_part});
  RequireDeclared(ctx, {in, out, t_in, i, t_out, t_idx, out_idx, t_part});
  RequireShape(ctx, in, Shape::Kind::kBag, "bag");
  RequireShape(ctx, out, Shape::Kind::kVector, "vector");

  if (AuxVerdict v = CheckTerm(ctx, *n_parts, checker.options().term_policy);
      !v) {
    Fail("nParts may not terminate (" + v.failing_premise + ")");
  }
  try {
    ExprType t = TypeExpr(ctx, *n_parts);
    if (t.shape.kind() != Shape::Kind::kInt) Fail("nParts must be an int");
    if (t.sens.is_positive()) {
      Fail("nParts must be 0-sensitive, got " + t.sens.ToString());
    }
  } catch (const TypeError& e) {
    Fail(std::string("nParts: ") + e.what());
  }
  VarSet fvs = FreeVars(*n_parts);
  for (const auto& v : {i, t_in, t_idx, out_idx, t_part}) {
    if (fvs.count(v)) Fail("nParts mentions " + v);
  }
  VarSet mvs = CheckMapBody(checker, ctx, c, t_in, t_out,
                            {t_in, in, out, i, out_idx}, {i, in, out_idx});
  for (const auto& v : fvs) {
    if (mvs.count(v)) Fail("nParts mentions " + v + ", which the body modifies");
  }

  TypingContext result = ctx;
  result.Set(out, ctx.sens(in));
  WidenAll(result, mvs);
  for (const auto& v : {i, t_in, t_idx, out_idx, t_part}) {
    result.Set(v, ExtReal::Infinity());
  }
  return {std::move(result), {}};
}

CmdTyping RuleBagSum(const TypingContext& ctx, const ExpansionHint& hint) {
  static const std::vector<std::string> kFormals = {"in", "out", "idx", "t_in",
                                                    "bound"};
  Args args(hint, kFormals);
  const std::string& in = args.Var(0);
  const std::string& out = args.Var(1);
  const std::string& idx = args.Var(2);
  const std::string& t_in = args.Var(3);
  ExtReal bound = LiteralValue(args.Lit(4), "bound");
  RequireDistinct({in, out, idx, t_in});
  RequireDeclared(ctx, {in, out, idx, t_in});
  RequireShape(ctx, in, Shape::Kind::kBag, "bag");
  if (!ctx.shape(in).elem().is_numeric()) Fail(in + " must hold numbers");

  TypingContext result = ctx;
  result.Set(out, ctx.sens(in) * bound);
  result.Set(idx, ExtReal::Infinity());
  result.Set(t_in, ExtReal::Infinity());
  return {std::move(result), {}};
}

CmdTyping RuleAdvComp(Checker& checker, const TypingContext& ctx,
                      const ExpansionHint& hint, TypingMode mode) {
  static const std::vector<std::string> kFormals = {"i", "n", "omega", "c"};
  Args args(hint, kFormals);
  const std::string& i = args.Var(0);
  int64_t n = PositiveCount(args.Lit(1), "n");
  ExtReal omega = LiteralValue(args.Lit(2), "omega");
  if (omega.is_zero() || !(omega.value() < 1)) {
    Fail("omega must lie strictly between 0 and 1");
  }
  const Cmd& c = args.Body(3);
  RequireDeclared(ctx, {i});
  if (ModifiedVars(c).count(i)) Fail(i + " is modified by the body");

  TypingContext start = ctx;
  start.Set(i, ExtReal::Zero());
  std::optional<Checker::Invariant> inv;
  try {
    inv = checker.FindInvariant(start, c, mode);
  } catch (const TypeError& e) {
    Fail(std::string("body: ") + e.what());
  }
  if (!inv) Fail("no invariant context for the body after widening");

  AdvCompResult r = ComposeAdvanced(inv->body_cost, n, omega);
  checker.Log({hint.extension, hint.loc, true,
               r.simple_chosen ? "simple composition " + ToString(r.chosen)
                               : "advanced composition " + ToString(r.chosen)});
  return {inv->ctx, r.chosen};
}

CmdTyping RuleRepeat(Checker& checker, const TypingContext& ctx,
                     const ExpansionHint& hint, TypingMode mode) {
  static const std::vector<std::string> kFormals = {"i", "n", "c"};
  Args args(hint, kFormals);
  const std::string& i = args.Var(0);
  int64_t n = PositiveCount(args.Lit(1), "n");
  const Cmd& c = args.Body(2);
  RequireDeclared(ctx, {i});
  if (ModifiedVars(c).count(i)) Fail(i + " is modified by the body");

  TypingContext cur = ctx;
  cur.Set(i, ExtReal::Zero());
  PrivacyCost total;
  for (int64_t k = 1; k <= n; ++k) {
    CmdTyping step = checker.TypeCmd(cur, c, mode);
    total += step.cost;
    if (step.ctx == cur) {
      // Every later iteration sees the same context, so repeats this step.
      total.epsilon += ExtReal::Times(n - k, step.cost.epsilon);
      total.delta += ExtReal::Times(n - k, step.cost.delta);
      break;
    }
    cur = std::move(step.ctx);
  }
  return {std::move(cur), total};
}

}  // namespace

bool HasExtensionRule(std::string_view name) {
  return IsStandardExtension(name);
}

CmdTyping ApplyExtensionRule(Checker& checker, const TypingContext& ctx,
                             const ExpansionHint& hint, TypingMode mode) {
  const std::string& name = hint.extension;
  CmdTyping result;
  if (name == "bmap" || name == "vmap") {
    result = RuleMap(checker, ctx, hint, name == "vmap");
  } else if (name == "partition") {
    result = RulePartition(checker, ctx, hint);
  } else if (name == "bsum") {
    result = RuleBagSum(ctx, hint);
  } else if (name == "ac") {
    return RuleAdvComp(checker, ctx, hint, mode);
  } else if (name == "repeat") {
    return RuleRepeat(checker, ctx, hint, mode);
  } else {
    Fail("no typing rule for " + name);
  }
  checker.Log({name, hint.loc, true, ""});
  return result;
}

AdvCompResult ComposeAdvanced(const PrivacyCost& per_iteration, int64_t n,
                              const ExtReal& omega) {
  AdvCompResult r;
  double eps = per_iteration.epsilon.value();
  double nd = static_cast<double>(n);
  r.advanced_epsilon = eps * std::sqrt(2.0 * nd * std::log(1.0 / omega.value())) +
                       nd * eps * std::expm1(eps);
  r.advanced_delta = ExtReal::Times(n, per_iteration.delta) + omega;
  r.simple = {ExtReal::Times(n, per_iteration.epsilon),
              ExtReal::Times(n, per_iteration.delta)};
  r.simple_chosen = r.advanced_epsilon > r.simple.epsilon.value() &&
                    r.advanced_delta > r.simple.delta;
  r.chosen = r.simple_chosen
                 ? r.simple
                 : PrivacyCost{ExtReal(r.advanced_epsilon), r.advanced_delta};
  return r;
}

}  // namespace dpimp
