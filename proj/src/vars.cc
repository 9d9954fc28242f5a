#include "dpimp/vars.h"

namespace dpimp {

namespace {

void CollectExpr(const Expr& e, VarSet& out) {
  std::visit(Overloaded{
                 [&](const VarExpr& x) { out.insert(x.name); },
                 [](const LitExpr&) {},
                 [&](const BinaryExpr& x) {
                   CollectExpr(*x.lhs, out);
                   CollectExpr(*x.rhs, out);
                 },
                 [&](const NotExpr& x) { CollectExpr(*x.operand, out); },
                 [&](const IndexExpr& x) {
                   CollectExpr(*x.base, out);
                   CollectExpr(*x.index, out);
                 },
                 [&](const LengthExpr& x) { CollectExpr(*x.base, out); },
                 [&](const BuiltinExpr& x) {
                   for (const auto& a : x.args) CollectExpr(*a, out);
                 },
             },
             e.node);
}

void CollectCmd(const Cmd& c, VarSet& out);

void CollectParam(const Param& p, VarSet& out) {
  std::visit(Overloaded{
                 [&](const ExprParam& x) { CollectExpr(*x.expr, out); },
                 [&](const CmdParam& x) { CollectCmd(*x.cmd, out); },
                 [&](const VarParam& x) { out.insert(x.name); },
                 [](const LitParam&) {},
             },
             p);
}

void CollectCmd(const Cmd& c, VarSet& out) {
  std::visit(Overloaded{
                 [&](const AssignCmd& x) {
                   out.insert(x.target);
                   CollectExpr(*x.value, out);
                 },
                 [&](const IndexAssignCmd& x) {
                   out.insert(x.target);
                   CollectExpr(*x.index, out);
                   CollectExpr(*x.value, out);
                 },
                 [&](const LengthAssignCmd& x) {
                   out.insert(x.target);
                   if (x.element) CollectExpr(*x.element, out);
                   CollectExpr(*x.length, out);
                 },
                 [&](const LaplaceCmd& x) {
                   out.insert(x.target);
                   CollectExpr(*x.center, out);
                 },
                 [&](const IfCmd& x) {
                   CollectExpr(*x.cond, out);
                   CollectCmd(*x.then_branch, out);
                   CollectCmd(*x.else_branch, out);
                 },
                 [&](const WhileCmd& x) {
                   CollectExpr(*x.cond, out);
                   CollectCmd(*x.body, out);
                 },
                 [&](const SeqCmd& x) {
                   CollectCmd(*x.first, out);
                   CollectCmd(*x.second, out);
                 },
                 [](const SkipCmd&) {},
                 [&](const ExtInvokeCmd& x) {
                   for (const auto& p : x.params) CollectParam(p, out);
                 },
                 [](const PlaceholderCmd&) {},
                 [&](const HintedCmd& x) { CollectCmd(*x.body, out); },
             },
             c.node);
}

void CollectModified(const Cmd& c, VarSet& out) {
  std::visit(Overloaded{
                 [&](const AssignCmd& x) { out.insert(x.target); },
                 [&](const IndexAssignCmd& x) { out.insert(x.target); },
                 [&](const LengthAssignCmd& x) { out.insert(x.target); },
                 [&](const LaplaceCmd& x) { out.insert(x.target); },
                 [&](const IfCmd& x) {
                   CollectModified(*x.then_branch, out);
                   CollectModified(*x.else_branch, out);
                 },
                 [&](const WhileCmd& x) { CollectModified(*x.body, out); },
                 [&](const SeqCmd& x) {
                   CollectModified(*x.first, out);
                   CollectModified(*x.second, out);
                 },
                 [](const SkipCmd&) {},
                 [&](const ExtInvokeCmd& x) {
                   for (const auto& p : x.params) {
                     if (const auto* v = std::get_if<VarParam>(&p)) {
                       out.insert(v->name);
                     } else if (const auto* cp = std::get_if<CmdParam>(&p)) {
                       CollectModified(*cp->cmd, out);
                     }
                   }
                 },
                 [](const PlaceholderCmd&) {},
                 [&](const HintedCmd& x) { CollectModified(*x.body, out); },
             },
             c.node);
}

}  // namespace

VarSet FreeVars(const Expr& e) {
  VarSet out;
  CollectExpr(e, out);
  return out;
}

VarSet FreeVars(const Cmd& c) {
  VarSet out;
  CollectCmd(c, out);
  return out;
}

VarSet FreeVars(const Param& p) {
  VarSet out;
  CollectParam(p, out);
  return out;
}

VarSet ModifiedVars(const Cmd& c) {
  VarSet out;
  CollectModified(c, out);
  return out;
}

}  // namespace dpimp
