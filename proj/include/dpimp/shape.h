#ifndef DPIMP_SHAPE_H_
#define DPIMP_SHAPE_H_

#include <map>
#include <memory>
#include <string>

namespace dpimp {

// Data type of a value: int | float | bool | [elem] (vector) | {elem} (bag).
class Shape {
 public:
  enum class Kind { kInt, kFloat, kBool, kVector, kBag };

  static Shape Int() { return Shape(Kind::kInt, nullptr); }
  static Shape Float() { return Shape(Kind::kFloat, nullptr); }
  static Shape Bool() { return Shape(Kind::kBool, nullptr); }
  static Shape Vector(Shape elem);
  static Shape Bag(Shape elem);

  Kind kind() const { return kind_; }
  bool is_numeric() const { return kind_ == Kind::kInt || kind_ == Kind::kFloat; }
  bool is_collection() const {
    return kind_ == Kind::kVector || kind_ == Kind::kBag;
  }
  // Element shape of a vector or bag. Throws std::logic_error otherwise.
  const Shape& elem() const;

  // Concrete syntax: "int", "float", "bool", "[float]", "{[int]}".
  std::string ToString() const;

  friend bool operator==(const Shape& a, const Shape& b);

 private:
  Shape(Kind kind, std::shared_ptr<const Shape> elem)
      : kind_(kind), elem_(std::move(elem)) {}

  Kind kind_;
  std::shared_ptr<const Shape> elem_;
};

// Declared shapes of program variables.
using ShapeEnv = std::map<std::string, Shape>;

}  // namespace dpimp

#endif  // DPIMP_SHAPE_H_
