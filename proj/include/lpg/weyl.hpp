#pragma once

// Admissible pairs, the partial bijections they realize on the spectrum of
// the core, and the Weyl groupoid of a groupoid algebra.
//
// The spectrum is finite, so C(X)_+ is the cone spanned by the indicators
// 1_y; checking condition (1) on indicators is therefore enough.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpg/errors.hpp"
#include "lpg/groupoid_algebra.hpp"

namespace lpg {

struct RealizedHomeo {
  std::vector<int> U;  // points with ba > 0
  std::vector<int> V;  // points with ab > 0
  PartialBijection alpha;
  std::vector<GaussRational> ba;  // ba as a function on X
  std::vector<GaussRational> ab;
};

enum class AdmissibilityCondition { None, Positivity, Supports, Realization };
std::string_view condition_name(AdmissibilityCondition c);

struct Admissibility {
  std::optional<RealizedHomeo> homeo;
  AdmissibilityCondition violated = AdmissibilityCondition::None;
  std::string detail;
  explicit operator bool() const { return homeo.has_value(); }
};

template <class E>
struct AdmissiblePair {
  E a;
  E b;
  std::optional<RealizedHomeo> realized;
};

// A unital algebra together with its core C(X) and the finite spectrum X.
// Models provide: points(), indicator(y), mul(e, f), as_function(e) (values
// on X when e ∈ C(X), else nullopt) and require_member(e).

struct GroupoidModel {
  using Element = ConvElement;
  std::shared_ptr<const FiniteGroupoid> groupoid;

  std::size_t points() const { return groupoid->unit_count(); }
  ConvElement indicator(std::size_t y) const { return ConvElement::delta(groupoid, groupoid->units()[y]); }
  ConvElement mul(const ConvElement& e, const ConvElement& f) const { return convolve(e, f); }
  std::optional<std::vector<GaussRational>> as_function(const ConvElement& e) const;
  void require_member(const ConvElement& e) const;
};

struct MatrixModel {
  using Element = CMatrix;
  std::shared_ptr<const RepresentedAlgebra> algebra;
  Spectrum spectrum;

  // Computes the core of alg for p and its spectrum.
  static MatrixModel from_algebra(const RepresentedAlgebra& alg, const PExponent& p);

  std::size_t points() const { return spectrum.size(); }
  CMatrix indicator(std::size_t y) const { return spectrum.idempotents[y]; }
  CMatrix mul(const CMatrix& e, const CMatrix& f) const { return e * f; }
  std::optional<std::vector<GaussRational>> as_function(const CMatrix& e) const { return as_function_on(spectrum, e); }
  void require_member(const CMatrix& e) const;
};

namespace detail {
std::string describe_point_set(const std::vector<int>& pts);
}

// Decides conditions (1)-(3) for (a, b) exactly and returns the realized
// partial bijection or the first violated condition.
template <class Model>
Admissibility check_admissible(const Model& m, const typename Model::Element& a, const typename Model::Element& b) {
  m.require_member(a);
  m.require_member(b);
  const std::size_t n = m.points();
  Admissibility out;
  auto fail = [&](AdmissibilityCondition c, std::string detail) {
    out.violated = c;
    out.detail = std::move(detail);
    return out;
  };
  // (1) on indicators: a 1_y b and b 1_y a lie in C(X)_+.
  std::vector<std::vector<GaussRational>> a_y_b(n), b_y_a(n);
  for (std::size_t y = 0; y < n; ++y) {
    const auto ind = m.indicator(y);
    auto ayb = m.as_function(m.mul(m.mul(a, ind), b));
    auto bya = m.as_function(m.mul(m.mul(b, ind), a));
    if (!ayb) return fail(AdmissibilityCondition::Positivity, "a 1_" + std::to_string(y) + " b is not in C(X)");
    if (!bya) return fail(AdmissibilityCondition::Positivity, "b 1_" + std::to_string(y) + " a is not in C(X)");
    for (std::size_t x = 0; x < n; ++x) {
      if (!(*ayb)[x].is_nonneg_real())
        return fail(AdmissibilityCondition::Positivity,
                    "a 1_" + std::to_string(y) + " b is negative or non-real at " + std::to_string(x));
      if (!(*bya)[x].is_nonneg_real())
        return fail(AdmissibilityCondition::Positivity,
                    "b 1_" + std::to_string(y) + " a is negative or non-real at " + std::to_string(x));
    }
    a_y_b[y] = std::move(*ayb);
    b_y_a[y] = std::move(*bya);
  }
  // (2) U and V from ba and ab (these lie in C(X)_+ by (1) with f = 1).
  auto ba = m.as_function(m.mul(b, a));
  auto ab = m.as_function(m.mul(a, b));
  if (!ba || !ab) return fail(AdmissibilityCondition::Supports, "ba or ab is not in C(X)");
  RealizedHomeo h;
  h.ba = *ba;
  h.ab = *ab;
  for (std::size_t x = 0; x < n; ++x) {
    if (h.ba[x].is_positive_real()) h.U.push_back(static_cast<int>(x));
    if (h.ab[x].is_positive_real()) h.V.push_back(static_cast<int>(x));
  }
  if (h.U.size() != h.V.size()) {
    return fail(AdmissibilityCondition::Supports,
                "U = " + detail::describe_point_set(h.U) + " and V = " + detail::describe_point_set(h.V) +
                    " differ in size");
  }
  // (3) f(α(x)) ba(x) = (b f a)(x) on indicators of V, and symmetrically.
  std::vector<int> forward(n, -1), backward(n, -1);
  for (int x : h.U) {
    int hit = -1;
    for (int y : h.V) {
      const auto& v = b_y_a[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      if (v.is_zero()) continue;
      if (hit >= 0 || !(v == h.ba[static_cast<std::size_t>(x)])) {
        return fail(AdmissibilityCondition::Realization, "b 1_y a at " + std::to_string(x) + " is not concentrated on one y");
      }
      hit = y;
    }
    if (hit < 0) return fail(AdmissibilityCondition::Realization, "no image for " + std::to_string(x));
    forward[static_cast<std::size_t>(x)] = hit;
  }
  for (int y : h.V) {
    int hit = -1;
    for (int x : h.U) {
      const auto& v = a_y_b[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      if (v.is_zero()) continue;
      if (hit >= 0 || !(v == h.ab[static_cast<std::size_t>(y)])) {
        return fail(AdmissibilityCondition::Realization, "a 1_x b at " + std::to_string(y) + " is not concentrated on one x");
      }
      hit = x;
    }
    if (hit < 0) return fail(AdmissibilityCondition::Realization, "no preimage for " + std::to_string(y));
    backward[static_cast<std::size_t>(y)] = hit;
  }
  for (int x : h.U) {
    if (backward[static_cast<std::size_t>(forward[static_cast<std::size_t>(x)])] != x) {
      return fail(AdmissibilityCondition::Realization, "forward and backward maps disagree at " + std::to_string(x));
    }
  }
  h.alpha = PartialBijection::from_image(forward);
  out.homeo = std::move(h);
  return out;
}

// Reverse s♯ = (b, a) and product st = (ac, db), both re-verified.
template <class Model>
AdmissiblePair<typename Model::Element> reverse_pair(const Model& m, const AdmissiblePair<typename Model::Element>& s) {
  AdmissiblePair<typename Model::Element> r{s.b, s.a, std::nullopt};
  auto chk = check_admissible(m, r.a, r.b);
  if (!chk) throw VerificationFailure("reverse of an admissible pair was rejected: " + chk.detail);
  r.realized = std::move(chk.homeo);
  return r;
}

template <class Model>
AdmissiblePair<typename Model::Element> compose_pairs(const Model& m, const AdmissiblePair<typename Model::Element>& s,
                                                      const AdmissiblePair<typename Model::Element>& t) {
  AdmissiblePair<typename Model::Element> st{m.mul(s.a, t.a), m.mul(t.b, s.b), std::nullopt};
  auto chk = check_admissible(m, st.a, st.b);
  if (!chk) throw VerificationFailure("product of admissible pairs was rejected: " + chk.detail);
  st.realized = std::move(chk.homeo);
  return st;
}

using GroupoidPair = AdmissiblePair<ConvElement>;

// a(γ) = h(dom γ) on S, b(γ) = h(ran γ) when γ⁻¹ ∈ S. h is indexed by unit
// position and defaults to 1; it must be strictly positive on dom(S).
// Verifies that the pair realizes β_S and that ba = h² on dom(S).
GroupoidPair pair_from_bisection(const GroupoidModel& m, const Bisection& s,
                                 const std::optional<std::vector<Rational>>& h = std::nullopt);

// S = {γ : a(γ) ≠ 0 and b(γ⁻¹) ≠ 0} for a principal groupoid, with the
// lemma's claims checked; any failure is a VerificationFailure.
Bisection bisection_from_pair(const GroupoidModel& m, const GroupoidPair& s);

struct WeylOptions {
  std::uint64_t max_bisections = 1'000'000;
  std::uint64_t isomorphism_node_limit = 10'000'000;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

struct WeylResult {
  GermGroupoid germs;
  std::size_t bisections = 0;
  std::size_t distinct_maps = 0;
  bool principal = false;
  // Explicit isomorphism germs -> G, present when G is principal.
  std::optional<std::vector<Arrow>> isomorphism;
};

WeylResult weyl_groupoid(const FiniteGroupoid& g, const PExponent& p, const WeylOptions& opts = {});

}  // namespace lpg
