#include "lpg/exact/gaussian.hpp"

#include <ostream>
#include <stdexcept>

namespace lpg::exact {

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = re;
  im_ = im;
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.abs2();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string imag = (im_ == Rational(1)) ? "i" : (im_ == Rational(-1) ? "-i" : im_.to_string() + " i");
  if (re_.is_zero()) return imag;
  if (im_.sign() > 0) return re_.to_string() + "+" + imag;
  return re_.to_string() + imag;
}

GaussRational GaussRational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty scalar literal");
  if (s.back() != 'i') return GaussRational(Rational::parse(s));
  s.pop_back();
  // Split at the last sign that is not the leading character.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](std::string part) {
    if (part.empty() || part == "+") return Rational(1);
    if (part == "-") return Rational(-1);
    return Rational::parse(part);
  };
  if (split == std::string::npos) return {Rational(0), imag_part(s)};
  return {Rational::parse(s.substr(0, split)), imag_part(s.substr(split))};
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << z.to_string(); }

}  // namespace lpg::exact
