#include "dpimp/ext_real.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string_view>

namespace dpimp {
namespace {

using i128 = __int128;

constexpr i128 kMax = std::numeric_limits<int64_t>::max();

}  // namespace

std::optional<Rational> Rational::Normalize(i128 num, i128 den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  if (num > kMax || num < -kMax || den > kMax) return std::nullopt;
  return Rational(static_cast<int64_t>(num), static_cast<int64_t>(den), Raw{});
}

Rational::Rational(int64_t num, int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  auto r = Normalize(num, den);
  num_ = r->num_;
  den_ = r->den_;
}

std::optional<Rational> Rational::FromDouble(double v) {
  if (!std::isfinite(v)) return std::nullopt;
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::nullopt;
  std::string_view text(buf, end - buf);

  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(),
                    exponent);
    text = text.substr(0, e);
  }
  i128 mantissa = 0;
  for (char c : text) {
    if (c == '.') continue;
    mantissa = mantissa * 10 + (c - '0');
    if (mantissa > kMax) return std::nullopt;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    exponent -= static_cast<int>(text.size() - dot - 1);
  }
  if (negative) mantissa = -mantissa;
  i128 den = 1;
  while (exponent > 0) {
    mantissa *= 10;
    if (mantissa > kMax || mantissa < -kMax) return std::nullopt;
    --exponent;
  }
  while (exponent < 0) {
    den *= 10;
    if (den > kMax) return std::nullopt;
    ++exponent;
  }
  return Normalize(mantissa, den);
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::Add(const Rational& a, const Rational& b) {
  return Normalize(static_cast<i128>(a.num_) * b.den_ +
                       static_cast<i128>(b.num_) * a.den_,
                   static_cast<i128>(a.den_) * b.den_);
}

std::optional<Rational> Rational::Mul(const Rational& a, const Rational& b) {
  return Normalize(static_cast<i128>(a.num_) * b.num_,
                   static_cast<i128>(a.den_) * b.den_);
}

std::optional<Rational> Rational::Div(const Rational& a, const Rational& b) {
  if (b.num_ == 0) return std::nullopt;
  return Normalize(static_cast<i128>(a.num_) * b.den_,
                   static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = static_cast<i128>(a.num_) * b.den_;
  i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtReal::ExtReal(double v) {
  if (std::isnan(v) || v < 0) {
    throw std::invalid_argument("extended real must be non-negative");
  }
  if (std::isinf(v)) {
    infinite_ = true;
    approx_ = v;
    exact_.reset();
    return;
  }
  approx_ = v;
  exact_ = Rational::FromDouble(v);
}

ExtReal::ExtReal(const Rational& r) {
  if (r < Rational(0)) {
    throw std::invalid_argument("extended real must be non-negative");
  }
  approx_ = r.ToDouble();
  exact_ = r;
}

ExtReal ExtReal::Infinity() {
  return ExtReal(std::numeric_limits<double>::infinity());
}

bool ExtReal::is_zero() const {
  if (infinite_) return false;
  if (exact_) return exact_->num() == 0;
  return approx_ == 0.0;
}

double ExtReal::value() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : approx_;
}

ExtReal ExtReal::FromDouble(double v) {
  if (v < 0 || std::isnan(v)) throw std::invalid_argument("negative ExtReal");
  if (std::isinf(v)) return Infinity();
  if (auto r = Rational::FromDouble(v)) return ExtReal(*r);
  return ExtReal(v);
}

std::string ExtReal::ToString() const {
  if (infinite_) return "inf";
  if (exact_ && exact_->den() == 1) return std::to_string(exact_->num());
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), approx_);
  (void)ec;
  return std::string(buf, end);
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.infinite_ || b.infinite_) return ExtReal::Infinity();
  std::optional<Rational> exact;
  if (a.exact_ && b.exact_) exact = Rational::Add(*a.exact_, *b.exact_);
  if (exact) return ExtReal(*exact);
  ExtReal r(a.approx_ + b.approx_);
  r.exact_.reset();
  return r;
}

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  if (a.is_zero() || b.is_zero()) return ExtReal::Zero();
  if (a.infinite_ || b.infinite_) return ExtReal::Infinity();
  std::optional<Rational> exact;
  if (a.exact_ && b.exact_) exact = Rational::Mul(*a.exact_, *b.exact_);
  if (exact) return ExtReal(*exact);
  ExtReal r(a.approx_ * b.approx_);
  r.exact_.reset();
  return r;
}

ExtReal ExtReal::Divide(const ExtReal& a, const ExtReal& b) {
  if (b.infinite_ || b.is_zero()) {
    throw std::invalid_argument("division by zero or infinite extended real");
  }
  if (a.infinite_) return Infinity();
  std::optional<Rational> exact;
  if (a.exact_ && b.exact_) exact = Rational::Div(*a.exact_, *b.exact_);
  if (exact) return ExtReal(*exact);
  ExtReal r(a.approx_ / b.approx_);
  r.exact_.reset();
  return r;
}

ExtReal ExtReal::Max(const ExtReal& a, const ExtReal& b) {
  return (a < b) ? b : a;
}

ExtReal ExtReal::Min(const ExtReal& a, const ExtReal& b) {
  return (b < a) ? b : a;
}

ExtReal ExtReal::Times(int64_t n, const ExtReal& a) {
  if (n < 0) throw std::invalid_argument("negative repetition count");
  return ExtReal(Rational(n)) * a;
}

bool operator==(const ExtReal& a, const ExtReal& b) {
  return (a <=> b) == std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    return a.infinite_ ? std::partial_ordering::greater
                       : std::partial_ordering::less;
  }
  if (a.exact_ && b.exact_) return *a.exact_ <=> *b.exact_;
  return a.approx_ <=> b.approx_;
}

}  // namespace dpimp
