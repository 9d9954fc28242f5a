#include "dpimp/value_json.h"

#include <cmath>
#include <stdexcept>

namespace dpimp {

using nlohmann::json;

json ValueToJson(const Value& v) {
  if (v.is_int()) return v.as_int();
  if (v.is_float()) return v.as_float();
  if (v.is_bool()) return v.as_bool();
  json arr = json::array();
  for (const auto& e : v.elems()) arr.push_back(ValueToJson(e));
  if (v.is_bag()) return json{{"bag", arr}};
  return arr;
}

Value ValueFromJson(const json& j, const Shape& shape) {
  auto mismatch = [&]() {
    return std::invalid_argument("expected a value of shape " +
                                 shape.ToString() + ", got " + j.dump());
  };
  switch (shape.kind()) {
    case Shape::Kind::kInt:
      if (j.is_number_integer()) return Value::Int(j.get<int64_t>());
      if (j.is_number_float()) {
        double d = j.get<double>();
        if (std::trunc(d) == d && std::fabs(d) < 9e15) {
          return Value::Int(static_cast<int64_t>(d));
        }
      }
      throw mismatch();
    case Shape::Kind::kFloat:
      if (j.is_number()) return Value::Float(j.get<double>());
      throw mismatch();
    case Shape::Kind::kBool:
      if (j.is_boolean()) return Value::Bool(j.get<bool>());
      throw mismatch();
    case Shape::Kind::kVector: {
      if (!j.is_array()) throw mismatch();
      std::vector<Value> elems;
      for (const auto& e : j) elems.push_back(ValueFromJson(e, shape.elem()));
      return Value::Vec(std::move(elems));
    }
    case Shape::Kind::kBag: {
      const json* arr = &j;
      if (j.is_object()) {
        if (!j.contains("bag") || j.size() != 1) throw mismatch();
        arr = &j.at("bag");
      }
      if (!arr->is_array()) throw mismatch();
      std::vector<Value> elems;
      for (const auto& e : *arr) {
        elems.push_back(ValueFromJson(e, shape.elem()));
      }
      return Value::Bag(std::move(elems));
    }
  }
  throw mismatch();
}

json StateToJson(const ProgramState& state) {
  json out = json::object();
  for (const auto& [name, v] : state) out[name] = ValueToJson(v);
  return out;
}

ProgramState StateFromJson(const json& j, const ShapeEnv& shapes) {
  if (!j.is_object()) throw std::invalid_argument("state must be an object");
  ProgramState state;
  for (const auto& [name, shape] : shapes) state[name] = DefaultValue(shape);
  for (const auto& [name, value] : j.items()) {
    auto it = shapes.find(name);
    if (it == shapes.end()) {
      throw std::invalid_argument("unknown variable '" + name + "'");
    }
    try {
      state[name] = ValueFromJson(value, it->second);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(name + ": " + e.what());
    }
  }
  return state;
}

}  // namespace dpimp
