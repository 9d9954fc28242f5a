#include "dpimp/value.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace dpimp {

double Value::as_number() const {
  if (is_int()) return static_cast<double>(as_int());
  return as_float();
}

const std::vector<Value>& Value::elems() const {
  if (const auto* v = std::get_if<VecV>(&data)) return v->elems;
  return std::get<BagV>(data).elems;
}

std::vector<Value>& Value::mutable_elems() {
  if (auto* v = std::get_if<VecV>(&data)) return v->elems;
  return std::get<BagV>(data).elems;
}

bool operator==(const Value& a, const Value& b) {
  if (a.data.index() != b.data.index()) return false;
  if (a.is_collection()) return a.elems() == b.elems();
  if (a.is_int()) return a.as_int() == b.as_int();
  if (a.is_float()) return a.as_float() == b.as_float();
  return a.as_bool() == b.as_bool();
}

Value DefaultValue(const Shape& shape) {
  switch (shape.kind()) {
    case Shape::Kind::kInt:
      return Value::Int(0);
    case Shape::Kind::kFloat:
      return Value::Float(0.0);
    case Shape::Kind::kBool:
      return Value::Bool(false);
    case Shape::Kind::kVector:
      return Value::Vec({});
    case Shape::Kind::kBag:
      return Value::Bag({});
  }
  return Value::Int(0);
}

bool WellShaped(const Value& v, const Shape& shape) {
  switch (shape.kind()) {
    case Shape::Kind::kInt:
      return v.is_int();
    case Shape::Kind::kFloat:
      return v.is_float();
    case Shape::Kind::kBool:
      return v.is_bool();
    case Shape::Kind::kVector:
    case Shape::Kind::kBag:
      if (shape.kind() == Shape::Kind::kVector ? !v.is_vec() : !v.is_bag()) {
        return false;
      }
      return std::all_of(v.elems().begin(), v.elems().end(),
                         [&](const Value& e) {
                           return WellShaped(e, shape.elem());
                         });
  }
  return false;
}

bool WellShaped(const ProgramState& state, const ShapeEnv& shapes) {
  for (const auto& [name, shape] : shapes) {
    auto it = state.find(name);
    if (it == state.end() || !WellShaped(it->second, shape)) return false;
  }
  return true;
}

Value CoerceToShape(const Value& v, const Shape& shape) {
  if (shape.kind() == Shape::Kind::kFloat && v.is_int()) {
    return Value::Float(static_cast<double>(v.as_int()));
  }
  if (shape.is_collection() && v.is_collection()) {
    Value out = v;
    for (auto& e : out.mutable_elems()) e = CoerceToShape(e, shape.elem());
    return out;
  }
  return v;
}

namespace {

int KindRank(const Value& v) { return static_cast<int>(v.data.index()); }

std::vector<Value> SortedCanonical(const std::vector<Value>& elems) {
  std::vector<Value> out;
  out.reserve(elems.size());
  for (const auto& e : elems) out.push_back(Canonical(e));
  std::sort(out.begin(), out.end(), CanonicalLess);
  return out;
}

void RequireShape(const Value& v, const Shape& shape) {
  if (!WellShaped(v, shape)) {
    throw std::logic_error("value " + ToString(v) + " is not of shape " +
                           shape.ToString());
  }
}

ExtReal Unchecked(const Value& a, const Value& b, const Shape& shape) {
  switch (shape.kind()) {
    case Shape::Kind::kInt: {
      __int128 d = static_cast<__int128>(a.as_int()) - b.as_int();
      if (d < 0) d = -d;
      if (d <= INT64_MAX) return ExtReal(Rational(static_cast<int64_t>(d)));
      return ExtReal(static_cast<double>(d));
    }
    case Shape::Kind::kFloat: {
      double d = std::fabs(a.as_float() - b.as_float());
      if (std::isnan(d)) return ExtReal::Infinity();
      return ExtReal(d);
    }
    case Shape::Kind::kBool:
      return a.as_bool() == b.as_bool() ? ExtReal::Zero() : ExtReal::Infinity();
    case Shape::Kind::kVector: {
      const auto& xs = a.elems();
      const auto& ys = b.elems();
      if (xs.size() != ys.size()) return ExtReal::Infinity();
      ExtReal total;
      for (size_t i = 0; i < xs.size() && total.is_finite(); ++i) {
        total += Unchecked(xs[i], ys[i], shape.elem());
      }
      return total;
    }
    case Shape::Kind::kBag: {
      // Symmetric multiset difference over canonical representatives.
      std::vector<Value> xs = SortedCanonical(a.elems());
      std::vector<Value> ys = SortedCanonical(b.elems());
      int64_t diff = 0;
      size_t i = 0, j = 0;
      while (i < xs.size() && j < ys.size()) {
        if (CanonicalLess(xs[i], ys[j])) {
          ++diff;
          ++i;
        } else if (CanonicalLess(ys[j], xs[i])) {
          ++diff;
          ++j;
        } else {
          ++i;
          ++j;
        }
      }
      diff += static_cast<int64_t>((xs.size() - i) + (ys.size() - j));
      return ExtReal(Rational(diff));
    }
  }
  return ExtReal::Infinity();
}

}  // namespace

Value Canonical(const Value& v) {
  if (v.is_float() && v.as_float() == 0.0) return Value::Float(0.0);
  if (v.is_vec()) {
    std::vector<Value> elems;
    elems.reserve(v.elems().size());
    for (const auto& e : v.elems()) elems.push_back(Canonical(e));
    return Value::Vec(std::move(elems));
  }
  if (v.is_bag()) return Value::Bag(SortedCanonical(v.elems()));
  return v;
}

bool CanonicalLess(const Value& a, const Value& b) {
  if (KindRank(a) != KindRank(b)) return KindRank(a) < KindRank(b);
  if (a.is_int()) return a.as_int() < b.as_int();
  if (a.is_float()) return a.as_float() < b.as_float();
  if (a.is_bool()) return a.as_bool() < b.as_bool();
  const auto& xs = a.elems();
  const auto& ys = b.elems();
  return std::lexicographical_compare(xs.begin(), xs.end(), ys.begin(),
                                      ys.end(), CanonicalLess);
}

ExtReal Distance(const Value& a, const Value& b, const Shape& shape) {
  RequireShape(a, shape);
  RequireShape(b, shape);
  return Unchecked(a, b, shape);
}

bool ValuesEquivalent(const Value& a, const Value& b, const Shape& shape) {
  return Distance(a, b, shape).is_zero();
}

std::string ToString(const Value& v) {
  if (v.is_int()) return std::to_string(v.as_int());
  if (v.is_bool()) return v.as_bool() ? "true" : "false";
  if (v.is_float()) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v.as_float());
    (void)ec;
    std::string s(buf, ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
  }
  std::string out = v.is_vec() ? "[" : "{";
  for (size_t i = 0; i < v.elems().size(); ++i) {
    if (i) out += ", ";
    out += ToString(v.elems()[i]);
  }
  return out + (v.is_vec() ? "]" : "}");
}

}  // namespace dpimp
