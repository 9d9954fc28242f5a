#ifndef DPIMP_VALUE_H_
#define DPIMP_VALUE_H_

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dpimp/ext_real.h"
#include "dpimp/shape.h"

namespace dpimp {

struct Value;

struct VecV {
  std::vector<Value> elems;
};
struct BagV {
  std::vector<Value> elems;
};

// Runtime value. Assignment copies; there is no sharing between variables.
struct Value {
  std::variant<int64_t, double, bool, VecV, BagV> data;

  static Value Int(int64_t v) { return Value{v}; }
  static Value Float(double v) { return Value{v}; }
  static Value Bool(bool v) { return Value{v}; }
  static Value Vec(std::vector<Value> elems) {
    return Value{VecV{std::move(elems)}};
  }
  static Value Bag(std::vector<Value> elems) {
    return Value{BagV{std::move(elems)}};
  }

  bool is_int() const { return std::holds_alternative<int64_t>(data); }
  bool is_float() const { return std::holds_alternative<double>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_vec() const { return std::holds_alternative<VecV>(data); }
  bool is_bag() const { return std::holds_alternative<BagV>(data); }
  bool is_collection() const { return is_vec() || is_bag(); }

  int64_t as_int() const { return std::get<int64_t>(data); }
  double as_float() const { return std::get<double>(data); }
  bool as_bool() const { return std::get<bool>(data); }
  // Numeric value of an int or float.
  double as_number() const;
  // Elements of a vector or bag.
  const std::vector<Value>& elems() const;
  std::vector<Value>& mutable_elems();
};

// Structural equality; bags compare by position.
bool operator==(const Value& a, const Value& b);

using ProgramState = std::map<std::string, Value>;

// 0, 0.0, false, or the empty collection.
Value DefaultValue(const Shape& shape);

bool WellShaped(const Value& v, const Shape& shape);

// Every variable of `shapes` is present and well shaped.
bool WellShaped(const ProgramState& state, const ShapeEnv& shapes);

// Converts an int to a float where the shape asks for one, recursively.
Value CoerceToShape(const Value& v, const Shape& shape);

// Metric on values of `shape`: absolute difference for numbers, 0 or inf for
// bools, elementwise sum for equal-length vectors (inf otherwise), and the
// size of the symmetric multiset difference for bags, with elements matched
// up to distance-zero equivalence. Throws std::logic_error when a value is
// not well shaped.
ExtReal Distance(const Value& a, const Value& b, const Shape& shape);

bool ValuesEquivalent(const Value& a, const Value& b, const Shape& shape);

// Representative of the distance-zero class: -0.0 becomes 0.0 and bag
// elements are sorted.
Value Canonical(const Value& v);

// Total order used for canonical forms.
bool CanonicalLess(const Value& a, const Value& b);

// Source-like rendering: 3, 2.5, true, [1, 2], {1, 2}.
std::string ToString(const Value& v);

}  // namespace dpimp

#endif  // DPIMP_VALUE_H_
