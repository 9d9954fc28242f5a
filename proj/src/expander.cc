#include "dpimp/expander.h"

#include <set>

#include "dpimp/parser.h"
#include "dpimp/printer.h"
#include "dpimp/vars.h"

namespace dpimp {

namespace {

constexpr std::string_view kStandardSource = R"(
extension bmap(in, out, t_in, i, t_out, c) {
  i = 0;
  out.length = in.length;
  while i < in.length do
    t_in = in[i];
    c;
    out[i] = t_out;
    i = i + 1;
  end
}

extension vmap(in, out, t_in, i, t_out, c) {
  i = 0;
  out.length = in.length;
  while i < in.length do
    t_in = in[i];
    c;
    out[i] = t_out;
    i = i + 1;
  end
}

extension partition(in, out, t_in, i, t_out, t_idx, out_idx, t_part, nParts, c) {
  i = 0;
  out.length = nParts;
  while i < nParts do
    out[i].length = 0;
    i = i + 1;
  end;
  bmap(in, out_idx, t_in, i, t_out, c);
  i = 0;
  while i < out_idx.length do
    t_idx = out_idx[i];
    if 0 <= t_idx && t_idx < out.length then
      t_part = out[t_idx];
      t_part.length = t_part.length + 1;
      t_part[t_part.length - 1] = in[i];
      out[t_idx] = t_part;
    else
      skip;
    end;
    i = i + 1;
  end
}

extension bsum(in, out, idx, t_in, bound) {
  idx = 0;
  out = 0;
  while idx < in.length do
    t_in = in[idx];
    if t_in < -bound then
      out = out - bound;
    else
      if t_in > bound then
        out = out + bound;
      else
        out = out + t_in;
      end
    end
    idx = idx + 1;
  end
}

extension ac(i, n, omega, c) {
  i = 0;
  while i < n do
    c;
    i = i + 1;
  end
}

extension repeat(i, n, c) {
  i = 0;
  while i < n do
    c;
    i = i + 1;
  end
}
)";

// Auxiliary parameters that a command argument should not mention.
std::vector<size_t> AuxiliaryPositions(const std::string& name) {
  if (name == "bmap" || name == "vmap") return {3};
  if (name == "partition") return {3, 5, 6, 7};
  return {};
}

class Substituter {
 public:
  Substituter(const std::vector<std::string>& formals,
              const std::vector<Param>& actuals, SourceLoc loc)
      : loc_(loc) {
    for (size_t i = 0; i < formals.size(); ++i) {
      map_.emplace(formals[i], &actuals[i]);
    }
  }

  ExprPtr SubstExpr(const ExprPtr& e) {
    return std::visit(
        Overloaded{
            [&](const VarExpr& x) -> ExprPtr {
              const Param* p = Lookup(x.name);
              if (!p) return e;
              ExprPtr actual = ParamAsExpr(*p);
              if (!actual) {
                Fail("command argument for '" + x.name +
                     "' used as an expression");
              }
              return actual;
            },
            [&](const LitExpr&) { return e; },
            [&](const BinaryExpr& x) {
              return MakeBinary(x.op, SubstExpr(x.lhs), SubstExpr(x.rhs),
                                loc_);
            },
            [&](const NotExpr& x) {
              return MakeNot(SubstExpr(x.operand), loc_);
            },
            [&](const IndexExpr& x) {
              return MakeIndex(SubstExpr(x.base), SubstExpr(x.index), loc_);
            },
            [&](const LengthExpr& x) {
              return MakeLength(SubstExpr(x.base), loc_);
            },
            [&](const BuiltinExpr& x) {
              std::vector<ExprPtr> args;
              for (const auto& a : x.args) args.push_back(SubstExpr(a));
              return MakeBuiltin(x.name, std::move(args), loc_);
            },
        },
        e->node);
  }

  CmdPtr SubstCmd(const CmdPtr& c) {
    // Template nodes take the invocation site.
    SourceLoc at = loc_;
    return std::visit(
        Overloaded{
            [&](const AssignCmd& x) {
              return MakeAssign(Target(x.target), SubstExpr(x.value), at);
            },
            [&](const IndexAssignCmd& x) {
              return MakeCmd(IndexAssignCmd{Target(x.target),
                                            SubstExpr(x.index),
                                            SubstExpr(x.value)},
                             at);
            },
            [&](const LengthAssignCmd& x) {
              return MakeCmd(
                  LengthAssignCmd{Target(x.target),
                                  x.element ? SubstExpr(x.element) : nullptr,
                                  SubstExpr(x.length)},
                  at);
            },
            [&](const LaplaceCmd& x) {
              return MakeCmd(
                  LaplaceCmd{Target(x.target), x.width, SubstExpr(x.center)},
                  at);
            },
            [&](const IfCmd& x) {
              return MakeCmd(IfCmd{SubstExpr(x.cond), SubstCmd(x.then_branch),
                                   SubstCmd(x.else_branch)},
                             at);
            },
            [&](const WhileCmd& x) {
              return MakeCmd(WhileCmd{SubstExpr(x.cond), SubstCmd(x.body)},
                             at);
            },
            [&](const SeqCmd& x) {
              return MakeSeq(SubstCmd(x.first), SubstCmd(x.second), at);
            },
            [&](const SkipCmd&) { return c; },
            [&](const ExtInvokeCmd& x) {
              std::vector<Param> params;
              for (const auto& p : x.params) params.push_back(SubstParam(p));
              return MakeCmd(ExtInvokeCmd{x.name, std::move(params)}, at);
            },
            [&](const PlaceholderCmd& x) {
              const Param* p = Lookup(x.name);
              if (!p) Fail("unbound command placeholder '" + x.name + "'");
              const auto* cp = std::get_if<CmdParam>(p);
              if (!cp) {
                Fail("'" + x.name + "' is used as a command but received " +
                     PrintParam(*p));
              }
              return cp->cmd;
            },
            [&](const HintedCmd&) { return c; },
        },
        c->node);
  }

  Param SubstParam(const Param& p) {
    return std::visit(
        Overloaded{
            [&](const ExprParam& x) -> Param {
              return ExprParam{SubstExpr(x.expr)};
            },
            [&](const CmdParam& x) -> Param { return CmdParam{SubstCmd(x.cmd)}; },
            [&](const VarParam& x) -> Param {
              const Param* actual = Lookup(x.name);
              return actual ? *actual : p;
            },
            [&](const LitParam&) -> Param { return p; },
        },
        p);
  }

 private:
  const Param* Lookup(const std::string& name) const {
    auto it = map_.find(name);
    return it == map_.end() ? nullptr : it->second;
  }

  std::string Target(const std::string& name) {
    const Param* p = Lookup(name);
    if (!p) return name;
    if (const auto* v = std::get_if<VarParam>(p)) return v->name;
    Fail("'" + name + "' is assigned to, so it needs a variable, got " +
         PrintParam(*p));
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ExpansionError(message, loc_);
  }

  std::map<std::string, const Param*> map_;
  SourceLoc loc_;
};

class Expander {
 public:
  explicit Expander(const ExtensionRegistry& registry) : registry_(registry) {}

  CmdPtr Run(const CmdPtr& c) {
    return std::visit(
        Overloaded{
            [&](const IfCmd& x) {
              CmdPtr t = Run(x.then_branch);
              CmdPtr f = Run(x.else_branch);
              if (t == x.then_branch && f == x.else_branch) return c;
              return MakeCmd(IfCmd{x.cond, t, f}, c->loc);
            },
            [&](const WhileCmd& x) {
              CmdPtr body = Run(x.body);
              if (body == x.body) return c;
              return MakeCmd(WhileCmd{x.cond, body}, c->loc);
            },
            [&](const SeqCmd& x) {
              CmdPtr first = Run(x.first);
              CmdPtr second = Run(x.second);
              if (first == x.first && second == x.second) return c;
              return MakeSeq(first, second, c->loc);
            },
            [&](const ExtInvokeCmd& x) { return Invoke(x, c->loc); },
            [&](const auto&) { return c; },
        },
        c->node);
  }

  std::vector<ExpansionWarning> warnings;

 private:
  CmdPtr Invoke(const ExtInvokeCmd& x, SourceLoc loc) {
    const ExtensionDefinition* def = registry_.Find(x.name);
    if (!def) throw ExpansionError("unknown extension '" + x.name + "'", loc);
    if (x.params.size() != def->formals.size()) {
      throw ExpansionError(x.name + " expects " +
                               std::to_string(def->formals.size()) +
                               " parameters, got " +
                               std::to_string(x.params.size()),
                           loc);
    }
    std::vector<Param> actuals;
    for (const auto& p : x.params) {
      if (const auto* cp = std::get_if<CmdParam>(&p)) {
        actuals.push_back(CmdParam{Run(cp->cmd)});
      } else {
        actuals.push_back(p);
      }
    }
    CheckAuxiliaryClash(x.name, actuals, loc);
    if (++depth_ > kMaxDepth) {
      throw ExpansionError("extension expansion nested too deeply", loc);
    }
    CmdPtr body = Run(Substitute(def->body, def->formals, actuals, loc));
    --depth_;
    return MakeCmd(HintedCmd{ExpansionHint{x.name, actuals, loc}, body}, loc);
  }

  void CheckAuxiliaryClash(const std::string& name,
                           const std::vector<Param>& actuals, SourceLoc loc) {
    VarSet cmd_vars;
    for (const auto& p : actuals) {
      if (std::holds_alternative<CmdParam>(p)) {
        VarSet fv = FreeVars(p);
        cmd_vars.insert(fv.begin(), fv.end());
      }
    }
    for (size_t pos : AuxiliaryPositions(name)) {
      if (pos >= actuals.size()) continue;
      const auto* v = std::get_if<VarParam>(&actuals[pos]);
      if (v && cmd_vars.count(v->name)) {
        warnings.push_back({"auxiliary variable '" + v->name + "' of " + name +
                                " also occurs in its command argument",
                            loc});
      }
    }
  }

  static constexpr int kMaxDepth = 64;
  const ExtensionRegistry& registry_;
  int depth_ = 0;
};

}  // namespace

std::string_view StandardExtensionSource() { return kStandardSource; }

ExtensionRegistry ExtensionRegistry::Standard() {
  static const std::vector<ExtensionDefinition> defs =
      ParseExtensionDefinitions(kStandardSource);
  ExtensionRegistry reg;
  for (const auto& d : defs) reg.Add(d);
  return reg;
}

ExtensionRegistry ExtensionRegistry::ForProgram(const Program& program) {
  ExtensionRegistry reg = Standard();
  for (const auto& d : program.extensions) reg.Add(d);
  return reg;
}

void ExtensionRegistry::Add(ExtensionDefinition def) {
  std::string name = def.name;
  SourceLoc loc = def.loc;
  if (!defs_.emplace(name, std::move(def)).second) {
    throw ExpansionError("extension '" + name + "' already defined", loc);
  }
}

const ExtensionDefinition* ExtensionRegistry::Find(
    const std::string& name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

CmdPtr Substitute(const CmdPtr& body, const std::vector<std::string>& formals,
                  const std::vector<Param>& actuals, SourceLoc loc) {
  if (formals.size() != actuals.size()) {
    throw ExpansionError("expected " + std::to_string(formals.size()) +
                             " parameters, got " +
                             std::to_string(actuals.size()),
                         loc);
  }
  return Substituter(formals, actuals, loc).SubstCmd(body);
}

ExpansionResult Expand(const CmdPtr& cmd, const ExtensionRegistry& registry) {
  Expander expander(registry);
  CmdPtr out = expander.Run(cmd);
  return {out, std::move(expander.warnings)};
}

ExpansionResult ExpandProgram(const Program& program) {
  return Expand(program.main, ExtensionRegistry::ForProgram(program));
}

CmdPtr StripHints(const CmdPtr& cmd) {
  return std::visit(
      Overloaded{
          [&](const IfCmd& x) {
            return MakeCmd(IfCmd{x.cond, StripHints(x.then_branch),
                                 StripHints(x.else_branch)},
                           cmd->loc);
          },
          [&](const WhileCmd& x) {
            return MakeCmd(WhileCmd{x.cond, StripHints(x.body)}, cmd->loc);
          },
          [&](const SeqCmd& x) {
            return MakeSeq(StripHints(x.first), StripHints(x.second),
                           cmd->loc);
          },
          [&](const HintedCmd& x) { return StripHints(x.body); },
          [&](const auto&) { return cmd; },
      },
      cmd->node);
}

}  // namespace dpimp
