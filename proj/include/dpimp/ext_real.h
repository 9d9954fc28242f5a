#ifndef DPIMP_EXT_REAL_H_
#define DPIMP_EXT_REAL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace dpimp {

// Exact rational with 64-bit numerator and positive denominator, always in
// lowest terms. Arithmetic returns nullopt on overflow so callers can fall back
// to floating point.
class Rational {
 public:
  Rational() = default;
  Rational(int64_t num, int64_t den = 1);

  // Exact value of the shortest decimal string that round-trips `v`, e.g.
  // 0.1 -> 1/10. Returns nullopt when that decimal does not fit.
  static std::optional<Rational> FromDouble(double v);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  double ToDouble() const { return static_cast<double>(num_) / den_; }
  std::string ToString() const;

  static std::optional<Rational> Add(const Rational& a, const Rational& b);
  static std::optional<Rational> Mul(const Rational& a, const Rational& b);
  static std::optional<Rational> Div(const Rational& a, const Rational& b);

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  struct Raw {};
  Rational(int64_t num, int64_t den, Raw) : num_(num), den_(den) {}
  static std::optional<Rational> Normalize(__int128 num, __int128 den);

  int64_t num_ = 0;
  int64_t den_ = 1;
};

// A value in [0, +inf]. Finite values carry an exact rational when every input
// that produced them was rational, and a double otherwise.
//
// Multiplication follows 0 * inf = 0 and k * inf = inf for k > 0.
class ExtReal {
 public:
  ExtReal() = default;  // zero
  // Throws std::invalid_argument for negative or NaN input.
  explicit ExtReal(double v);
  explicit ExtReal(const Rational& r);

  // Exact when the shortest decimal of `v` is a small rational.
  static ExtReal FromDouble(double v);

  static ExtReal Zero() { return ExtReal(); }
  static ExtReal One() { return ExtReal(Rational(1)); }
  static ExtReal Infinity();

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  bool is_zero() const;
  bool is_positive() const { return !is_zero(); }

  // +inf for infinite values.
  double value() const;
  // Exact form when available; never set for infinity.
  const std::optional<Rational>& exact() const { return exact_; }

  // Decimal rendering; "inf" for infinity, exact fraction where it is short.
  std::string ToString() const;

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b);
  ExtReal& operator+=(const ExtReal& other) { return *this = *this + other; }

  // a / b for finite positive b.
  static ExtReal Divide(const ExtReal& a, const ExtReal& b);
  static ExtReal Max(const ExtReal& a, const ExtReal& b);
  static ExtReal Min(const ExtReal& a, const ExtReal& b);
  // n * a for a non-negative integer n.
  static ExtReal Times(int64_t n, const ExtReal& a);

  friend bool operator==(const ExtReal& a, const ExtReal& b);
  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b);

 private:
  bool infinite_ = false;
  double approx_ = 0.0;
  std::optional<Rational> exact_ = Rational(0);
};

}  // namespace dpimp

#endif  // DPIMP_EXT_REAL_H_
