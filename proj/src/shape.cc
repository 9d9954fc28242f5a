#include "dpimp/shape.h"

#include <stdexcept>

namespace dpimp {

Shape Shape::Vector(Shape elem) {
  return Shape(Kind::kVector, std::make_shared<const Shape>(std::move(elem)));
}

Shape Shape::Bag(Shape elem) {
  return Shape(Kind::kBag, std::make_shared<const Shape>(std::move(elem)));
}

const Shape& Shape::elem() const {
  if (!elem_) throw std::logic_error("shape " + ToString() + " has no element");
  return *elem_;
}

std::string Shape::ToString() const {
  switch (kind_) {
    case Kind::kInt:
      return "int";
    case Kind::kFloat:
      return "float";
    case Kind::kBool:
      return "bool";
    case Kind::kVector:
      return "[" + elem_->ToString() + "]";
    case Kind::kBag:
      return "{" + elem_->ToString() + "}";
  }
  return "?";
}

bool operator==(const Shape& a, const Shape& b) {
  if (a.kind_ != b.kind_) return false;
  if (!a.is_collection()) return true;
  return *a.elem_ == *b.elem_;
}

}  // namespace dpimp
