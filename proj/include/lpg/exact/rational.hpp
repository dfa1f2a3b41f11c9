#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lpg::exact {

// Thrown when an exact result does not fit the 64-bit representation.
// Results are never silently rounded.
class RationalOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Reduced fraction with a positive denominator. Intermediate products are
// formed in 128 bits and reduced before being narrowed back.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // "p/q" or "p"; the inverse of parse().
  std::string to_string() const;
  // Accepts "p", "p/q", and finite decimals such as "1.5" or "-0.25".
  static Rational parse(std::string_view text);

 private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

}  // namespace lpg::exact

template <>
struct std::hash<lpg::exact::Rational> {
  std::size_t operator()(const lpg::exact::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
