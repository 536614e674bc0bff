#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <compare>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pwsig {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(Integer(num), Integer(den));
}

/// Formats as `p/q`, the denominator is always written (`1/1`, `-3/4`, `0/1`).
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

namespace detail {

inline bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace detail

/// Parses `p/q` or `p`. Accepts non-reduced input and reduces it; rejects a
/// zero or negative denominator.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den) ||
      den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
  auto strip = [](std::string_view s) { return s[0] == '+' ? s.substr(1) : s; };
  Integer p(std::string(strip(num)));
  Integer q(std::string(strip(den)));
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

/// A point of X = [0,1). The value 1 is not a point of the space and is only
/// ever used as a right interval bound.
class RatPoint {
 public:
  RatPoint() = default;

  explicit RatPoint(Rational value) : value_(std::move(value)) {
    if (value_ < 0 || value_ >= 1) {
      throw std::out_of_range("point " + to_string(value_) + " is outside [0,1)");
    }
  }

  static RatPoint parse(std::string_view text) { return RatPoint(parse_rational(text)); }

  const Rational& value() const noexcept { return value_; }

  friend bool operator==(const RatPoint& a, const RatPoint& b) { return a.value_ == b.value_; }
  friend bool operator<(const RatPoint& a, const RatPoint& b) { return a.value_ < b.value_; }
  friend bool operator>(const RatPoint& a, const RatPoint& b) { return b < a; }
  friend bool operator<=(const RatPoint& a, const RatPoint& b) { return !(b < a); }
  friend bool operator>=(const RatPoint& a, const RatPoint& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const RatPoint& p) {
    return os << to_string(p.value_);
  }

 private:
  Rational value_{0};
};

inline std::string to_string(const RatPoint& p) { return to_string(p.value()); }

}  // namespace pwsig
