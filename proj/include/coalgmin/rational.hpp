#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "coalgmin/error.hpp"

namespace coalgmin {

/// Exact fraction over 64-bit integers. Always kept in lowest terms with a
/// positive denominator; arithmetic that would leave the 64-bit range throws
/// ArithmeticOverflow instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1) {
    if (denominator == 0) {
      throw Error(ErrorKind::MalformedStructure, "rational with zero denominator");
    }
    assign(numerator, denominator);
  }

  /// Accepts "n" or "n/d" with an optional leading sign on n.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    auto num = parse_int(text.substr(0, slash), text);
    std::int64_t den = 1;
    if (slash != std::string_view::npos) {
      den = parse_int(text.substr(slash + 1), text);
    }
    if (den == 0) {
      throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  bool is_positive() const noexcept { return num_ > 0; }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Wide n = Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_;
    Wide d = Wide(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
  }
  Rational operator-() const {
    if (num_ == INT64_MIN) throw Error(ErrorKind::ArithmeticOverflow, "negation overflows");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return Wide(a.num_) * b.den_ <=> Wide(b.num_) * a.den_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  using Wide = __int128;

  static Wide gcd_wide(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      Wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(Wide n, Wide d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    Wide g = gcd_wide(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
      throw Error(ErrorKind::ArithmeticOverflow, "rational result leaves 64-bit range");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    if (r.num_ == 0) r.den_ = 1;
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

  static std::int64_t parse_int(std::string_view part, std::string_view whole) {
    auto fail = [&] { throw Error(ErrorKind::ParseError, "bad weight '" + std::string(whole) + "'"); };
    if (part.empty()) fail();
    bool negative = false;
    std::size_t i = 0;
    if (part[0] == '-' || part[0] == '+') {
      negative = part[0] == '-';
      i = 1;
    }
    if (i == part.size()) fail();
    Wide value = 0;
    for (; i < part.size(); ++i) {
      char c = part[i];
      if (c < '0' || c > '9') fail();
      value = value * 10 + (c - '0');
      if (value > Wide(INT64_MAX) + 1) fail();
    }
    if (negative) value = -value;
    if (value > INT64_MAX || value < INT64_MIN) fail();
    return static_cast<std::int64_t>(value);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace coalgmin
