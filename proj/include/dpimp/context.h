#ifndef DPIMP_CONTEXT_H_
#define DPIMP_CONTEXT_H_

#include <map>
#include <string>

#include "dpimp/ast.h"
#include "dpimp/ext_real.h"
#include "dpimp/shape.h"

namespace dpimp {

// Shape and sensitivity bound of every declared variable.
class TypingContext {
 public:
  struct Entry {
    Shape shape;
    ExtReal sens;
  };

  TypingContext() = default;
  static TypingContext FromProgram(const Program& program);

  // Adds or replaces a variable.
  void Declare(const std::string& name, Shape shape, ExtReal sens);

  bool Has(const std::string& name) const { return vars_.count(name) > 0; }
  // Both throw std::out_of_range for unknown names.
  const Shape& shape(const std::string& name) const;
  const ExtReal& sens(const std::string& name) const;
  // No-op for unknown names.
  void Set(const std::string& name, ExtReal sens);

  const std::map<std::string, Entry>& entries() const { return vars_; }
  ShapeEnv Shapes() const;

  friend bool operator==(const TypingContext& a, const TypingContext& b);

 private:
  std::map<std::string, Entry> vars_;
};

// Positive sensitivities become infinite; zeros stay.
TypingContext Stretch(const TypingContext& ctx);
// Pointwise maximum; both contexts must declare the same variables.
TypingContext PointwiseMax(const TypingContext& a, const TypingContext& b);
bool PointwiseLessEq(const TypingContext& a, const TypingContext& b);
TypingContext Scaled(const TypingContext& ctx, const ExtReal& k);

std::string ToString(const TypingContext& ctx);

struct PrivacyCost {
  ExtReal epsilon;
  ExtReal delta;

  bool is_zero() const { return epsilon.is_zero() && delta.is_zero(); }
  static PrivacyCost Max(const PrivacyCost& a, const PrivacyCost& b);

  friend PrivacyCost operator+(const PrivacyCost& a, const PrivacyCost& b) {
    return {a.epsilon + b.epsilon, a.delta + b.delta};
  }
  PrivacyCost& operator+=(const PrivacyCost& o) { return *this = *this + o; }
  friend bool operator==(const PrivacyCost& a, const PrivacyCost& b) {
    return a.epsilon == b.epsilon && a.delta == b.delta;
  }
};

std::string ToString(const PrivacyCost& cost);

}  // namespace dpimp

#endif  // DPIMP_CONTEXT_H_
