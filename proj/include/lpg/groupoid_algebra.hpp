#pragma once

// The convolution algebra C_c(G) of a finite discrete groupoid. At this scale
// C_c(G) is finite dimensional, so it already is the reduced algebra
// F^p_λ(G); the ⊕_x π_x matrices serve as its isometric representation.

#include <memory>
#include <vector>

#include "lpg/groupoid.hpp"
#include "lpg/lp_norms.hpp"

namespace lpg {

class ConvElement {
 public:
  ConvElement(std::shared_ptr<const FiniteGroupoid> g, std::vector<GaussRational> coefficients);

  static ConvElement zero(std::shared_ptr<const FiniteGroupoid> g);
  static ConvElement delta(std::shared_ptr<const FiniteGroupoid> g, Arrow a);
  // Indicator of the unit space, the unit of the algebra.
  static ConvElement unit(std::shared_ptr<const FiniteGroupoid> g);
  // Function on units (in units() order) viewed as an element of C(G⁰).
  static ConvElement on_units(std::shared_ptr<const FiniteGroupoid> g, const std::vector<GaussRational>& values);

  const FiniteGroupoid& groupoid() const { return *g_; }
  const std::shared_ptr<const FiniteGroupoid>& groupoid_ptr() const { return g_; }
  const GaussRational& operator[](Arrow a) const { return c_[static_cast<std::size_t>(a)]; }
  const std::vector<GaussRational>& coefficients() const { return c_; }
  std::vector<Arrow> support() const;
  bool is_zero() const;
  bool supported_on_units() const;

  ConvElement& operator+=(const ConvElement& o);
  ConvElement& operator-=(const ConvElement& o);
  friend ConvElement operator+(ConvElement a, const ConvElement& b) { return a += b; }
  friend ConvElement operator-(ConvElement a, const ConvElement& b) { return a -= b; }
  friend ConvElement operator*(const GaussRational& s, ConvElement a);
  friend bool operator==(const ConvElement& a, const ConvElement& b);

 private:
  void check_same(const ConvElement& o) const;

  std::shared_ptr<const FiniteGroupoid> g_;
  std::vector<GaussRational> c_;
};

// (f∗g)(γ) = Σ_{σ ∈ G dom(γ)} f(γσ⁻¹) g(σ).
ConvElement convolve(const ConvElement& f, const ConvElement& g);
// Literal evaluation of the defining sum, kept as a test oracle.
ConvElement convolve_by_definition(const ConvElement& f, const ConvElement& g);

double sup_norm(const ConvElement& f);
// max( sup_γ Σ_{σ ∈ γG} |f(σ)| , sup_γ Σ_{σ ∈ Gγ} |f(σ)| ).
double i_norm(const ConvElement& f);

struct RegularRep {
  Arrow unit = 0;
  std::vector<Arrow> index;  // Gx
  CMatrix matrix;            // entry (γ, σ) = f(γσ⁻¹)
};

// π_x(f) on ℓ^p(Gx); throws std::invalid_argument if x is not a unit.
RegularRep regular_representation(const ConvElement& f, Arrow x);
// ⊕_x π_x(f), blocks in units() order.
CMatrix direct_sum_representation(const ConvElement& f);

// sup_x ‖π_x(f)‖_p with each block certified; lower = max of lowers,
// upper = max of uppers.
NormEstimate lambda_norm(const ConvElement& f, const PExponent& p, const NormOptions& opts = {});

// j_a(γ) = ⟨π_{dom γ}(a) δ_{dom γ}, δ_γ⟩ with the bilinear pairing. Throws
// VerificationFailure unless the result reproduces a's coefficients.
std::vector<GaussRational> j_map(const ConvElement& a);
// ℓ_x(a) = π_x(a) δ_x and r_x(a) = π_x(a)ᵀ δ_x, indexed by Gx.
std::vector<GaussRational> left_slice(const ConvElement& a, Arrow x);
std::vector<GaussRational> right_slice(const ConvElement& a, Arrow x);

// E(a) = j_a restricted to the units.
ConvElement conditional_expectation(const ConvElement& a);

// Image of the δ-basis under ⊕_x π_x.
RepresentedAlgebra groupoid_algebra(const FiniteGroupoid& g);

struct GroupoidCore {
  CoreResult result;
  RepresentedAlgebra unit_functions;  // span of unit indicators
};

// Core of F^p_λ(G) (p ≠ 2), checked equal to C(G⁰) as subspaces.
GroupoidCore core_of_groupoid_algebra(const FiniteGroupoid& g, const PExponent& p);

}  // namespace lpg
