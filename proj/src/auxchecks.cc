#include "dpimp/auxchecks.h"

#include "dpimp/checker.h"
#include "dpimp/extension_rules.h"
#include "dpimp/type_expr.h"

namespace dpimp {
namespace {

const CmdParam* CmdArg(const ExpansionHint& hint, size_t i) {
  return i < hint.params.size() ? std::get_if<CmdParam>(&hint.params[i])
                                : nullptr;
}

AuxVerdict TermOfParam(const TypingContext& ctx, const Param& p,
                       IndexPolicy policy) {
  ExprPtr e = ParamAsExpr(p);
  if (!e) {
    if (const auto* ep = std::get_if<ExprParam>(&p)) e = ep->expr;
  }
  if (!e) return AuxVerdict::Fail("expected an expression parameter", {});
  return CheckTerm(ctx, *e, policy);
}

AuxVerdict TermOfHint(const TypingContext& ctx, const HintedCmd& h,
                      SourceLoc loc, IndexPolicy policy) {
  const ExpansionHint& hint = h.hint;
  const std::string& name = hint.extension;
  if (name == "bsum") return AuxVerdict::Ok();
  if (name == "bmap" || name == "vmap" || name == "partition" ||
      name == "repeat") {
    size_t body = name == "partition" ? 9 : name == "repeat" ? 2 : 5;
    const CmdParam* c = CmdArg(hint, body);
    if (c == nullptr) return AuxVerdict::Fail("malformed " + name, loc);
    if (name == "partition") {
      if (auto v = TermOfParam(ctx, hint.params[8], policy); !v) return v;
    }
    return CheckTerm(ctx, *c->cmd, policy);
  }
  return AuxVerdict::Fail("no termination rule for extension " + name, loc);
}

}  // namespace

AuxVerdict CheckDeterm(const Cmd& c) {
  return std::visit(
      Overloaded{
          [&](const LaplaceCmd&) {
            return AuxVerdict::Fail("Laplace mechanism", c.loc);
          },
          [&](const IfCmd& x) {
            if (auto v = CheckDeterm(*x.then_branch); !v) return v;
            return CheckDeterm(*x.else_branch);
          },
          [&](const WhileCmd& x) { return CheckDeterm(*x.body); },
          [&](const SeqCmd& x) {
            if (auto v = CheckDeterm(*x.first); !v) return v;
            return CheckDeterm(*x.second);
          },
          [&](const HintedCmd& x) { return CheckDeterm(*x.body); },
          [&](const ExtInvokeCmd& x) {
            for (const Param& p : x.params) {
              if (const auto* cp = std::get_if<CmdParam>(&p)) {
                if (auto v = CheckDeterm(*cp->cmd); !v) return v;
              }
            }
            return AuxVerdict::Ok();
          },
          [&](const auto&) { return AuxVerdict::Ok(); },
      },
      c.node);
}

AuxVerdict CheckTerm(const TypingContext& ctx, const Expr& e,
                     IndexPolicy policy) {
  return std::visit(
      Overloaded{
          [&](const VarExpr& x) {
            return ctx.Has(x.name)
                       ? AuxVerdict::Ok()
                       : AuxVerdict::Fail("undeclared variable " + x.name,
                                          e.loc);
          },
          [&](const LitExpr&) { return AuxVerdict::Ok(); },
          [&](const BinaryExpr& x) {
            if (auto v = CheckTerm(ctx, *x.lhs, policy); !v) return v;
            return CheckTerm(ctx, *x.rhs, policy);
          },
          [&](const NotExpr& x) { return CheckTerm(ctx, *x.operand, policy); },
          [&](const IndexExpr& x) {
            if (policy == IndexPolicy::kStrict) {
              return AuxVerdict::Fail("index expression", e.loc);
            }
            if (auto v = CheckTerm(ctx, *x.base, policy); !v) return v;
            return CheckTerm(ctx, *x.index, policy);
          },
          [&](const LengthExpr& x) { return CheckTerm(ctx, *x.base, policy); },
          [&](const BuiltinExpr& x) {
            for (const auto& a : x.args) {
              if (auto v = CheckTerm(ctx, *a, policy); !v) return v;
            }
            return AuxVerdict::Ok();
          },
      },
      e.node);
}

AuxVerdict CheckTerm(const TypingContext& ctx, const Cmd& c,
                     IndexPolicy policy) {
  bool lenient = policy == IndexPolicy::kAssumeInBounds;
  return std::visit(
      Overloaded{
          [&](const SkipCmd&) { return AuxVerdict::Ok(); },
          [&](const AssignCmd& x) {
            if (!ctx.Has(x.target)) {
              return AuxVerdict::Fail("undeclared variable " + x.target, c.loc);
            }
            return CheckTerm(ctx, *x.value, policy);
          },
          [&](const IndexAssignCmd& x) {
            if (!lenient) return AuxVerdict::Fail("index assignment", c.loc);
            if (auto v = CheckTerm(ctx, *x.index, policy); !v) return v;
            return CheckTerm(ctx, *x.value, policy);
          },
          [&](const LengthAssignCmd& x) {
            if (!lenient) return AuxVerdict::Fail("length assignment", c.loc);
            if (x.element) {
              if (auto v = CheckTerm(ctx, *x.element, policy); !v) return v;
            }
            return CheckTerm(ctx, *x.length, policy);
          },
          [&](const SeqCmd& x) {
            if (auto v = CheckTerm(ctx, *x.first, policy); !v) return v;
            return CheckTerm(ctx, *x.second, policy);
          },
          [&](const IfCmd& x) {
            if (auto v = CheckTerm(ctx, *x.cond, policy); !v) return v;
            if (auto v = CheckTerm(ctx, *x.then_branch, policy); !v) return v;
            return CheckTerm(ctx, *x.else_branch, policy);
          },
          [&](const HintedCmd& x) { return TermOfHint(ctx, x, c.loc, policy); },
          [&](const LaplaceCmd&) {
            return AuxVerdict::Fail("Laplace mechanism", c.loc);
          },
          [&](const WhileCmd&) {
            return AuxVerdict::Fail("while loop", c.loc);
          },
          [&](const auto&) {
            return AuxVerdict::Fail("unexpanded command", c.loc);
          },
      },
      c.node);
}

LinearVerdict CheckLinear(Checker& checker, const TypingContext& pre,
                          const Cmd& c) {
  auto fail = [&](std::string why, SourceLoc loc) {
    return LinearVerdict{AuxVerdict::Fail(std::move(why), loc), pre};
  };
  try {
    return std::visit(
        Overloaded{
            [&](const SkipCmd&) { return LinearVerdict{{}, pre}; },
            [&](const AssignCmd& x) {
              TypingContext post = pre;
              post.Set(x.target,
                       TypeExpr(pre, *x.value, TypingMode::kLinear).sens);
              return LinearVerdict{{}, post};
            },
            [&](const SeqCmd& x) {
              LinearVerdict first = CheckLinear(checker, pre, *x.first);
              if (!first.verdict) return first;
              return CheckLinear(checker, first.post, *x.second);
            },
            [&](const IfCmd& x) {
              if (TypeExpr(pre, *x.cond, TypingMode::kLinear)
                      .sens.is_positive()) {
                return fail("guard must be 0-sensitive", x.cond->loc);
              }
              LinearVerdict t = CheckLinear(checker, pre, *x.then_branch);
              if (!t.verdict) return t;
              LinearVerdict f = CheckLinear(checker, pre, *x.else_branch);
              if (!f.verdict) return f;
              return LinearVerdict{{}, PointwiseMax(t.post, f.post)};
            },
            [&](const HintedCmd& x) {
              const std::string& name = x.hint.extension;
              if (name != "bmap" && name != "vmap" && name != "partition" &&
                  name != "bsum") {
                return fail("no linearity rule for " + name, c.loc);
              }
              try {
                CmdTyping t = ApplyExtensionRule(checker, pre, x.hint,
                                                 TypingMode::kLinear);
                return LinearVerdict{{}, std::move(t.ctx)};
              } catch (const RuleFailure& f) {
                return fail(name + ": " + f.what(), c.loc);
              }
            },
            [&](const auto&) {
              return fail("no linearity rule for this command", c.loc);
            },
        },
        c.node);
  } catch (const TypeError& e) {
    return fail(e.message(), e.loc());
  }
}

bool WeakenLinear(const TypingContext& derived, const TypingContext& wanted) {
  return PointwiseLessEq(derived, wanted);
}

}  // namespace dpimp
