#include "dpimp/checker.h"

#include <algorithm>

#include "dpimp/extension_rules.h"
#include "dpimp/vars.h"

namespace dpimp {
namespace {

bool Strict(TypingMode mode) { return mode != TypingMode::kTerminating; }

void WidenAll(TypingContext& ctx, const VarSet& vars) {
  for (const auto& v : vars) ctx.Set(v, ExtReal::Infinity());
}

}  // namespace

void Checker::Log(RuleLogEntry entry) {
  auto same = [&](const RuleLogEntry& e) {
    return e.extension == entry.extension && e.loc.line == entry.loc.line &&
           e.loc.column == entry.loc.column && e.applied == entry.applied &&
           e.detail == entry.detail;
  };
  if (std::none_of(log_.begin(), log_.end(), same)) {
    log_.push_back(std::move(entry));
  }
}

std::optional<Checker::Invariant> Checker::FindInvariant(
    const TypingContext& ctx, const Cmd& body, TypingMode mode) {
  CmdTyping first = TypeCmd(ctx, body, mode);
  if (PointwiseLessEq(first.ctx, ctx)) return Invariant{ctx, first.cost};
  TypingContext widened = ctx;
  for (const auto& [name, entry] : first.ctx.entries()) {
    if (!(entry.sens <= ctx.sens(name))) widened.Set(name, ExtReal::Infinity());
  }
  CmdTyping second = TypeCmd(widened, body, mode);
  if (PointwiseLessEq(second.ctx, widened)) {
    return Invariant{widened, second.cost};
  }
  return std::nullopt;
}

CmdTyping Checker::TypeWhile(const TypingContext& ctx, const WhileCmd& w,
                             SourceLoc loc, TypingMode mode) {
  bool sensitive_guard = TypeExpr(ctx, *w.cond, mode).sens.is_positive();
  if (sensitive_guard && Strict(mode)) {
    throw TypeError("while guard must be 0-sensitive", w.cond->loc,
                    "While-Guard");
  }
  auto inv = FindInvariant(ctx, *w.body, mode);
  if (!inv) {
    throw TypeError("no loop invariant found after widening", loc,
                    "While-Invariant");
  }
  if (!inv->body_cost.is_zero()) {
    throw TypeError("loop body must have privacy cost (0, 0), got " +
                        ToString(inv->body_cost),
                    loc, "While-Cost");
  }
  TypingContext out = inv->ctx;
  sensitive_guard =
      sensitive_guard || TypeExpr(out, *w.cond, mode).sens.is_positive();
  if (sensitive_guard) {
    if (Strict(mode)) {
      throw TypeError("while guard becomes sensitive in the loop invariant",
                      w.cond->loc, "While-Guard");
    }
    WidenAll(out, ModifiedVars(*w.body));
  }
  return {std::move(out), {}};
}

CmdTyping Checker::TypeHinted(const TypingContext& ctx, const HintedCmd& h,
                              SourceLoc loc, TypingMode mode) {
  const std::string& name = h.hint.extension;
  std::string reason;
  if (!HasExtensionRule(name)) {
    reason = "no typing rule for extension";
  } else if (!options_.extension_rules) {
    reason = "extension rules disabled";
  } else {
    try {
      return ApplyExtensionRule(*this, ctx, h.hint, mode);
    } catch (const RuleFailure& f) {
      reason = f.what();
    }
  }
  Log({name, h.hint.loc, false, reason});
  try {
    return TypeCmd(ctx, *h.body, mode);
  } catch (const TypeError& e) {
    if (!HasExtensionRule(name) || !options_.extension_rules) throw;
    throw TypeError(e.message() + " (in the expansion of " + name +
                        ", whose rule failed: " + reason + ")",
                    e.loc().known() ? e.loc() : loc, e.premise());
  }
}

CmdTyping Checker::TypeCmd(const TypingContext& ctx, const Cmd& c,
                           TypingMode mode) {
  auto with = [&](const std::string& x, ExtReal s) {
    TypingContext out = ctx;
    out.Set(x, std::move(s));
    return CmdTyping{std::move(out), {}};
  };
  auto sens = [&](const Expr& e) { return TypeExpr(ctx, e, mode).sens; };
  auto violation = [&](const std::string& msg, const std::string& premise,
                       const std::string& target) {
    if (Strict(mode)) throw TypeError(msg, c.loc, premise);
    return with(target, ExtReal::Infinity());
  };

  return std::visit(
      Overloaded{
          [&](const AssignCmd& x) { return with(x.target, sens(*x.value)); },
          [&](const IndexAssignCmd& x) {
            ExtReal index = sens(*x.index);
            ExtReal value = sens(*x.value);
            const ExtReal& phi = ctx.sens(x.target);
            if (ctx.shape(x.target).kind() == Shape::Kind::kBag) {
              return violation("no rule assigns into a bag element",
                               "Bag-Index-Assign", x.target);
            }
            if (phi.is_infinite()) {
              return violation("cannot assign into an infinitely sensitive "
                               "vector",
                               "Assign-Vector-Index", x.target);
            }
            if (index.is_positive()) {
              return violation("index must be 0-sensitive",
                               "Assign-Vector-Index", x.target);
            }
            return with(x.target, phi + value);
          },
          [&](const LengthAssignCmd& x) {
            const Shape& shape = ctx.shape(x.target);
            if (sens(*x.length).is_positive()) {
              return violation("length must be 0-sensitive", "Assign-Length",
                               x.target);
            }
            if (!x.element) {
              if (shape.kind() == Shape::Kind::kBag) {
                return with(x.target, ExtReal::Infinity());
              }
              return CmdTyping{ctx, {}};
            }
            // x[i].length = n
            if (shape.kind() == Shape::Kind::kBag) {
              return violation("no rule assigns into a bag element",
                               "Bag-Index-Assign", x.target);
            }
            if (ctx.sens(x.target).is_infinite()) {
              return violation("cannot assign into an infinitely sensitive "
                               "vector",
                               "Assign-Vector-Index", x.target);
            }
            if (sens(*x.element).is_positive()) {
              return violation("index must be 0-sensitive",
                               "Assign-Vector-Index", x.target);
            }
            if (shape.elem().kind() == Shape::Kind::kBag) {
              auto lit = AsLiteral(*x.length);
              bool zero = lit && std::holds_alternative<int64_t>(*lit) &&
                          std::get<int64_t>(*lit) == 0;
              if (!zero) return with(x.target, ExtReal::Infinity());
            }
            return CmdTyping{ctx, {}};
          },
          [&](const LaplaceCmd& x) {
            ExtReal s = sens(*x.center);
            if (s.is_infinite()) {
              throw TypeError("Laplace over an infinitely sensitive expression",
                              c.loc, "Laplace");
            }
            CmdTyping out = with(x.target, ExtReal::Zero());
            out.cost.epsilon = ExtReal::Divide(s, ExtReal::FromDouble(x.width));
            return out;
          },
          [&](const IfCmd& x) {
            bool sensitive_guard = sens(*x.cond).is_positive();
            if (sensitive_guard && Strict(mode)) {
              throw TypeError("if guard must be 0-sensitive", x.cond->loc,
                              "If-Guard");
            }
            CmdTyping t = TypeCmd(ctx, *x.then_branch, mode);
            CmdTyping f = TypeCmd(ctx, *x.else_branch, mode);
            CmdTyping out{PointwiseMax(t.ctx, f.ctx),
                          PrivacyCost::Max(t.cost, f.cost)};
            if (sensitive_guard) {
              if (!out.cost.is_zero()) {
                throw TypeError("branches under a sensitive guard must have "
                                "privacy cost (0, 0)",
                                c.loc, "If-Guard");
              }
              WidenAll(out.ctx, ModifiedVars(*x.then_branch));
              WidenAll(out.ctx, ModifiedVars(*x.else_branch));
            }
            return out;
          },
          [&](const WhileCmd& x) { return TypeWhile(ctx, x, c.loc, mode); },
          [&](const SeqCmd& x) {
            CmdTyping first = TypeCmd(ctx, *x.first, mode);
            CmdTyping second = TypeCmd(first.ctx, *x.second, mode);
            second.cost += first.cost;
            return second;
          },
          [&](const SkipCmd&) { return CmdTyping{ctx, {}}; },
          [&](const HintedCmd& x) { return TypeHinted(ctx, x, c.loc, mode); },
          [&](const ExtInvokeCmd& x) -> CmdTyping {
            throw TypeError("unexpanded extension '" + x.name + "'", c.loc);
          },
          [&](const PlaceholderCmd& x) -> CmdTyping {
            throw TypeError("unbound command parameter '" + x.name + "'",
                            c.loc);
          },
      },
      c.node);
}

}  // namespace dpimp
