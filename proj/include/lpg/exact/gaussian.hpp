#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lpg/exact/rational.hpp"

namespace lpg::exact {

// An element re + im*i of Q(i). Q(i) is a field, so exact elimination over
// it is available alongside elimination over Q.
class GaussRational {
 public:
  constexpr GaussRational() = default;
  GaussRational(Rational re) : re_(re) {}  // NOLINT(implicit)
  GaussRational(std::int64_t re) : re_(re) {}  // NOLINT(implicit)
  GaussRational(Rational re, Rational im) : re_(re), im_(im) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  // Nonnegative real: the positive cone used by admissibility checks.
  bool is_nonneg_real() const { return im_.is_zero() && re_.sign() >= 0; }
  bool is_positive_real() const { return im_.is_zero() && re_.sign() > 0; }

  GaussRational conj() const { return {re_, -im_}; }
  Rational abs2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) = default;

  // "a/b", "c/d i", "a/b+c/d i" or "a/b-c/d i".
  std::string to_string() const;
  static GaussRational parse(std::string_view text);

 private:
  Rational re_;
  Rational im_;
};

std::ostream& operator<<(std::ostream& os, const GaussRational& z);

// Field traits used by the templated elimination routines.
inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const GaussRational& z) { return z.is_zero(); }

}  // namespace lpg::exact
