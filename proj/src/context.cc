#include "dpimp/context.h"

#include <stdexcept>

namespace dpimp {

TypingContext TypingContext::FromProgram(const Program& program) {
  TypingContext ctx;
  for (const Declaration& d : program.declarations) {
    ctx.Declare(d.name, d.shape, d.sensitivity);
  }
  return ctx;
}

void TypingContext::Declare(const std::string& name, Shape shape,
                            ExtReal sens) {
  vars_.insert_or_assign(name, Entry{std::move(shape), std::move(sens)});
}

const Shape& TypingContext::shape(const std::string& name) const {
  return vars_.at(name).shape;
}

const ExtReal& TypingContext::sens(const std::string& name) const {
  return vars_.at(name).sens;
}

void TypingContext::Set(const std::string& name, ExtReal sens) {
  auto it = vars_.find(name);
  if (it != vars_.end()) it->second.sens = std::move(sens);
}

ShapeEnv TypingContext::Shapes() const {
  ShapeEnv env;
  for (const auto& [name, entry] : vars_) env.emplace(name, entry.shape);
  return env;
}

bool operator==(const TypingContext& a, const TypingContext& b) {
  if (a.vars_.size() != b.vars_.size()) return false;
  auto ia = a.vars_.begin();
  for (auto ib = b.vars_.begin(); ib != b.vars_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !(ia->second.shape == ib->second.shape) ||
        !(ia->second.sens == ib->second.sens)) {
      return false;
    }
  }
  return true;
}

TypingContext Stretch(const TypingContext& ctx) {
  TypingContext out = ctx;
  for (const auto& [name, entry] : ctx.entries()) {
    if (entry.sens.is_positive()) out.Set(name, ExtReal::Infinity());
  }
  return out;
}

TypingContext PointwiseMax(const TypingContext& a, const TypingContext& b) {
  TypingContext out = a;
  for (const auto& [name, entry] : b.entries()) {
    if (!a.Has(name)) {
      throw std::logic_error("contexts declare different variables");
    }
    out.Set(name, ExtReal::Max(a.sens(name), entry.sens));
  }
  return out;
}

bool PointwiseLessEq(const TypingContext& a, const TypingContext& b) {
  for (const auto& [name, entry] : a.entries()) {
    if (!b.Has(name) || !(entry.sens <= b.sens(name))) return false;
  }
  return true;
}

TypingContext Scaled(const TypingContext& ctx, const ExtReal& k) {
  TypingContext out = ctx;
  for (const auto& [name, entry] : ctx.entries()) {
    out.Set(name, k * entry.sens);
  }
  return out;
}

std::string ToString(const TypingContext& ctx) {
  std::string s = "{";
  bool first = true;
  for (const auto& [name, entry] : ctx.entries()) {
    if (!first) s += ", ";
    first = false;
    s += name + ": " + entry.sens.ToString();
  }
  return s + "}";
}

PrivacyCost PrivacyCost::Max(const PrivacyCost& a, const PrivacyCost& b) {
  return {ExtReal::Max(a.epsilon, b.epsilon), ExtReal::Max(a.delta, b.delta)};
}

std::string ToString(const PrivacyCost& cost) {
  return "(" + cost.epsilon.ToString() + ", " + cost.delta.ToString() + ")";
}

}  // namespace dpimp
