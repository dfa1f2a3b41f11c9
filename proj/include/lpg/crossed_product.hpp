#pragma once

// Crossed products of finite groups acting on represented algebras by
// conjugation with Lamperti isometries, realized in the regular covariant
// representation on ℓ^p(G × {1..m}).
//
// Norms computed here are norms in this one regular representation, the one
// induced by the given representation of A.

#include <memory>
#include <vector>

#include "lpg/groupoid.hpp"
#include "lpg/groupoid_algebra.hpp"
#include "lpg/lp_norms.hpp"

namespace lpg {

class IsometricAlgebraAction {
 public:
  // Checks that every u_g has Lamperti form, that α_g = Ad(u_g) maps the
  // algebra onto itself, and that α_g α_h = α_gh on the basis.
  static IsometricAlgebraAction make(FiniteGroup group, RepresentedAlgebra algebra, std::vector<CMatrix> implementers);

  const FiniteGroup& group() const { return group_; }
  const RepresentedAlgebra& algebra() const { return *algebra_; }
  std::size_t dimension() const { return algebra_->ambient(); }
  const CMatrix& implementer(int g) const { return u_[static_cast<std::size_t>(g)]; }
  // α_g(a) = u_g a u_g⁻¹.
  CMatrix alpha(int g, const CMatrix& a) const;

 private:
  IsometricAlgebraAction(FiniteGroup group, std::shared_ptr<const RepresentedAlgebra> algebra, std::vector<CMatrix> u)
      : group_(std::move(group)), algebra_(std::move(algebra)), u_(std::move(u)) {}

  FiniteGroup group_;
  std::shared_ptr<const RepresentedAlgebra> algebra_;
  std::vector<CMatrix> u_;
  std::vector<CMatrix> u_inv_;
};

// G acting on C(X) = diagonal matrices through the permutation matrices
// u_g e_x = e_{σ_g x}.
IsometricAlgebraAction function_algebra_action(const GroupAction& action);
// G acting trivially (u_g = 1) on the algebra.
IsometricAlgebraAction trivial_algebra_action(const FiniteGroup& group, const RepresentedAlgebra& algebra);
// (α ⊗ β)_(g,h) = Ad(u_g ⊗ u'_h) on the span of a ⊗ b; product group indexing
// as in catalog::product_group.
IsometricAlgebraAction tensor_action(const IsometricAlgebraAction& a, const IsometricAlgebraAction& b);

// Σ a_g u_g with a_g in the algebra, indexed by group element.
struct CrossedElement {
  std::vector<CMatrix> coefficients;
};

class CrossedProduct {
 public:
  explicit CrossedProduct(IsometricAlgebraAction action);

  const IsometricAlgebraAction& action() const { return action_; }
  std::size_t order() const { return action_.group().order(); }
  std::size_t block() const { return action_.dimension(); }
  std::size_t dimension() const { return order() * block(); }

  // v_g e_(h, x) = e_(gh, x).
  const CMatrix& v(int g) const { return v_[static_cast<std::size_t>(g)]; }
  // Block diagonal with block h equal to α_{h⁻¹}(a).
  CMatrix pi(const CMatrix& a) const;
  // (π ⋊ v)(Σ a_g u_g) = Σ π(a_g) v_g.
  CMatrix image(const CrossedElement& x) const;

  // Span of π(b_k) v_g; basis element k * |G| + g. Closure is verified.
  const RepresentedAlgebra& algebra() const { return *algebra_; }
  // Coefficients Σ a_g u_g of an element of the span, or nullopt.
  std::optional<CrossedElement> coefficients_of(const CMatrix& x) const;

  // F(x) = (x(δ_1 ⊗ ·))(1), the identity block. Asserts F(x) = a_1 for x in
  // the span; throws std::invalid_argument otherwise.
  CMatrix conditional_expectation(const CMatrix& x) const;

 private:
  IsometricAlgebraAction action_;
  std::vector<CMatrix> v_;
  std::shared_ptr<const RepresentedAlgebra> algebra_;
};

struct CoreTheoremReport {
  std::size_t core_dimension = 0;           // dim core(A)
  std::size_t crossed_core_dimension = 0;   // dim core of the crossed product
  bool identified = false;                  // π(core(A)) = core(crossed)
  bool expectation_kills_translates = false;  // E(x u_g) = 0, x in core, g ≠ 1
  bool core_fixed_by_expectation = false;     // π(E(x)) = x for x in core
  bool passed() const { return identified && expectation_kills_translates && core_fixed_by_expectation; }
};

CoreTheoremReport verify_core_theorem(const CrossedProduct& cp, const PExponent& p);

// Linear bijection C(X) ⋊ G -> C_c(G ⋉ X), 1_y u_g ↦ δ_(g, σ_g⁻¹ y), in
// terms of the crossed-product basis order (k * |G| + g with k = y).
ConvElement crossed_to_groupoid(const CrossedProduct& cp, const GroupAction& action,
                                std::shared_ptr<const FiniteGroupoid> groupoid, const CrossedElement& x);

// Checks that (a u_g) ⊗ (b v_h) ↦ (a ⊗ b) w_(g,h) is multiplicative on all
// products of basis elements.
bool verify_tensor_compatibility(const CrossedProduct& left, const CrossedProduct& right, const CrossedProduct& product);

}  // namespace lpg
