#ifndef DPIMP_VALUE_JSON_H_
#define DPIMP_VALUE_JSON_H_

#include <nlohmann/json.hpp>

#include "dpimp/shape.h"
#include "dpimp/value.h"

namespace dpimp {

// Numbers, booleans, arrays for vectors and {"bag": [...]} for bags.
nlohmann::json ValueToJson(const Value& v);

// Decodes `j` at `shape`. Integral JSON numbers are accepted for floats.
// Throws std::invalid_argument on a mismatch.
Value ValueFromJson(const nlohmann::json& j, const Shape& shape);

nlohmann::json StateToJson(const ProgramState& state);

// Reads an object of variable values; variables not mentioned get their
// default value. Unknown keys are an error.
ProgramState StateFromJson(const nlohmann::json& j, const ShapeEnv& shapes);

}  // namespace dpimp

#endif  // DPIMP_VALUE_JSON_H_
