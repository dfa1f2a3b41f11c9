#include "lpg/exact/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace lpg::exact {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("invalid rational literal '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (!fits64(n) || !fits64(d)) throw RationalOverflow("rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  if (r.num_ == 0) r.den_ = 1;
  return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& o) {
  if (o.num_ == 0) return *this;
  if (den_ == 1 && o.den_ == 1) {
    __int128 s = static_cast<__int128>(num_) + o.num_;
    if (fits64(s)) {
      num_ = static_cast<std::int64_t>(s);
      return *this;
    }
  }
  *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                    static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (num_ == 0 || o.num_ == 0) {
    num_ = 0;
    den_ = 1;
    return *this;
  }
  *this = from_wide(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  *this = from_wide(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(s.substr(0, slash), text), parse_int(s.substr(slash + 1), text));
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string digits(s.substr(0, dot));
    std::string_view frac = s.substr(dot + 1);
    if (frac.size() > 17) throw std::invalid_argument("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    digits += frac;
    if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
    return Rational(parse_int(digits, text), scale);
  }
  return Rational(parse_int(s, text));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace lpg::exact
