#include "lpg/crossed_product.hpp"

#include <stdexcept>

#include "lpg/catalog.hpp"
#include "lpg/errors.hpp"

namespace lpg {

IsometricAlgebraAction IsometricAlgebraAction::make(FiniteGroup group, RepresentedAlgebra algebra,
                                                    std::vector<CMatrix> implementers) {
  const std::size_t m = algebra.ambient();
  if (implementers.size() != group.order()) throw std::invalid_argument("one implementer per group element expected");
  for (const auto& u : implementers) {
    if (u.rows() != m || u.cols() != m) throw std::invalid_argument("implementer has the wrong size");
    if (!has_lamperti_form(u)) throw std::invalid_argument("implementer is not a Lamperti isometry");
  }
  IsometricAlgebraAction act(std::move(group), std::make_shared<const RepresentedAlgebra>(std::move(algebra)),
                             std::move(implementers));
  // Lamperti matrices are unitary, so the inverse is the adjoint.
  for (const auto& u : act.u_) act.u_inv_.push_back(adjoint(u));
  const auto& basis = act.algebra_->basis();
  const auto order = static_cast<int>(act.group_.order());
  for (int g = 0; g < order; ++g)
    for (const auto& b : basis)
      if (!act.algebra_->contains(act.alpha(g, b))) throw std::invalid_argument("alpha_g does not preserve the algebra");
  for (const auto& b : basis)
    if (!(act.alpha(act.group_.identity(), b) == b)) throw std::invalid_argument("alpha_1 is not the identity");
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      for (const auto& b : basis)
        if (!(act.alpha(g, act.alpha(h, b)) == act.alpha(act.group_.mul(g, h), b))) {
          throw std::invalid_argument("alpha is not a group homomorphism");
        }
  return act;
}

CMatrix IsometricAlgebraAction::alpha(int g, const CMatrix& a) const {
  return u_[static_cast<std::size_t>(g)] * a * u_inv_[static_cast<std::size_t>(g)];
}

IsometricAlgebraAction function_algebra_action(const GroupAction& action) {
  const std::size_t m = action.points();
  std::vector<CMatrix> u;
  for (std::size_t g = 0; g < action.group().order(); ++g) {
    CMatrix p(m, m);
    for (std::size_t x = 0; x < m; ++x) p(static_cast<std::size_t>(action.act(static_cast<int>(g), static_cast<int>(x))), x) = GaussRational(1);
    u.push_back(std::move(p));
  }
  return IsometricAlgebraAction::make(action.group(), RepresentedAlgebra::diagonal(m), std::move(u));
}

IsometricAlgebraAction trivial_algebra_action(const FiniteGroup& group, const RepresentedAlgebra& algebra) {
  return IsometricAlgebraAction::make(group, algebra,
                                      std::vector<CMatrix>(group.order(), CMatrix::identity(algebra.ambient())));
}

IsometricAlgebraAction tensor_action(const IsometricAlgebraAction& a, const IsometricAlgebraAction& b) {
  std::vector<CMatrix> basis;
  for (const auto& x : a.algebra().basis())
    for (const auto& y : b.algebra().basis()) basis.push_back(kron(x, y));
  RepresentedAlgebra alg = RepresentedAlgebra::make(a.dimension() * b.dimension(), std::move(basis),
                                                    a.algebra().unital() && b.algebra().unital());
  std::vector<CMatrix> u;
  for (std::size_t g = 0; g < a.group().order(); ++g)
    for (std::size_t h = 0; h < b.group().order(); ++h)
      u.push_back(kron(a.implementer(static_cast<int>(g)), b.implementer(static_cast<int>(h))));
  return IsometricAlgebraAction::make(catalog::product_group(a.group(), b.group()), std::move(alg), std::move(u));
}

CrossedProduct::CrossedProduct(IsometricAlgebraAction action) : action_(std::move(action)) {
  const std::size_t n = order(), m = block();
  const FiniteGroup& grp = action_.group();
  for (std::size_t g = 0; g < n; ++g) {
    CMatrix v(n * m, n * m);
    for (std::size_t h = 0; h < n; ++h) {
      const auto gh = static_cast<std::size_t>(grp.mul(static_cast<int>(g), static_cast<int>(h)));
      for (std::size_t x = 0; x < m; ++x) v(gh * m + x, h * m + x) = GaussRational(1);
    }
    v_.push_back(std::move(v));
  }
  std::vector<CMatrix> basis;
  for (const auto& b : action_.algebra().basis()) {
    CMatrix pb = pi(b);
    for (std::size_t g = 0; g < n; ++g) basis.push_back(pb * v_[g]);
  }
  try {
    algebra_ = std::make_shared<const RepresentedAlgebra>(
        RepresentedAlgebra::make(n * m, std::move(basis), action_.algebra().unital()));
  } catch (const std::invalid_argument& e) {
    throw VerificationFailure(std::string("crossed product span is not a faithful algebra: ") + e.what());
  }
  // Covariance u_g a u_g⁻¹ = α_g(a) on the basis.
  for (std::size_t g = 0; g < n; ++g) {
    const auto gi = static_cast<std::size_t>(grp.inverse(static_cast<int>(g)));
    for (const auto& b : action_.algebra().basis()) {
      if (!(v_[g] * pi(b) * v_[gi] == pi(action_.alpha(static_cast<int>(g), b)))) {
        throw VerificationFailure("covariance rule fails");
      }
    }
  }
}

CMatrix CrossedProduct::pi(const CMatrix& a) const {
  std::vector<CMatrix> blocks;
  const FiniteGroup& grp = action_.group();
  for (std::size_t h = 0; h < order(); ++h) blocks.push_back(action_.alpha(grp.inverse(static_cast<int>(h)), a));
  return exact::block_diagonal(blocks);
}

CMatrix CrossedProduct::image(const CrossedElement& x) const {
  if (x.coefficients.size() != order()) throw std::invalid_argument("one coefficient per group element expected");
  CMatrix out(dimension(), dimension());
  for (std::size_t g = 0; g < order(); ++g) {
    if (x.coefficients[g].is_zero()) continue;
    if (!action_.algebra().contains(x.coefficients[g])) throw std::invalid_argument("coefficient is not in the algebra");
    out += pi(x.coefficients[g]) * v_[g];
  }
  return out;
}

std::optional<CrossedElement> CrossedProduct::coefficients_of(const CMatrix& x) const {
  auto c = algebra_->coordinates(x);
  if (!c) return std::nullopt;
  const auto& basis = action_.algebra().basis();
  CrossedElement out;
  out.coefficients.assign(order(), CMatrix(block(), block()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t g = 0; g < order(); ++g) {
      const GaussRational& z = (*c)[k * order() + g];
      if (!z.is_zero()) out.coefficients[g] += z * basis[k];
    }
  return out;
}

CMatrix CrossedProduct::conditional_expectation(const CMatrix& x) const {
  auto coeffs = coefficients_of(x);
  if (!coeffs) throw std::invalid_argument("element is not in the crossed product");
  const auto one = static_cast<std::size_t>(action_.group().identity());
  const std::size_t m = block();
  CMatrix f(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) f(r, c) = x(one * m + r, one * m + c);
  if (!(f == coeffs->coefficients[one])) throw VerificationFailure("F(x) differs from the coefficient a_1");
  return f;
}

CoreTheoremReport verify_core_theorem(const CrossedProduct& cp, const PExponent& p) {
  p.require_not_two("crossed-product core theorem");
  CoreTheoremReport rep;
  CoreResult core_a = core_of(cp.action().algebra(), p);
  CoreResult core_x = core_of(cp.algebra(), p);
  rep.core_dimension = core_a.core.dimension();
  rep.crossed_core_dimension = core_x.core.dimension();
  std::vector<CMatrix> embedded;
  for (const auto& b : core_a.core.basis()) embedded.push_back(cp.pi(b));
  RepresentedAlgebra image = RepresentedAlgebra::span_of(cp.dimension(), embedded, true);
  rep.identified = image.same_span(core_x.core);

  rep.expectation_kills_translates = true;
  rep.core_fixed_by_expectation = true;
  const int one = cp.action().group().identity();
  for (const auto& x : core_x.core.basis()) {
    for (int g = 0; g < static_cast<int>(cp.order()); ++g) {
      if (g == one) continue;
      if (!cp.conditional_expectation(x * cp.v(g)).is_zero()) rep.expectation_kills_translates = false;
    }
    CMatrix e = cp.conditional_expectation(x);
    if (!core_a.core.contains(e) || !(cp.pi(e) == x)) rep.core_fixed_by_expectation = false;
  }
  return rep;
}

ConvElement crossed_to_groupoid(const CrossedProduct& cp, const GroupAction& action,
                                std::shared_ptr<const FiniteGroupoid> groupoid, const CrossedElement& x) {
  const std::size_t m = action.points();
  std::vector<GaussRational> c(groupoid->size());
  for (std::size_t g = 0; g < cp.order(); ++g) {
    const CMatrix& a = x.coefficients[g];
    if (!a.is_diagonal()) throw std::invalid_argument("coefficient is not a function on X");
    const int ginv = action.group().inverse(static_cast<int>(g));
    for (std::size_t y = 0; y < m; ++y) {
      if (a(y, y).is_zero()) continue;
      c[static_cast<std::size_t>(transformation_arrow(action, static_cast<int>(g), action.act(ginv, static_cast<int>(y))))] += a(y, y);
    }
  }
  return ConvElement(std::move(groupoid), std::move(c));
}

bool verify_tensor_compatibility(const CrossedProduct& left, const CrossedProduct& right, const CrossedProduct& product) {
  const std::size_t nl = left.algebra().dimension(), nr = right.algebra().dimension();
  const std::size_t gl = left.order(), gr = right.order();
  const std::size_t dr = right.action().algebra().dimension();
  if (product.algebra().dimension() != nl * nr) return false;
  // Left basis index k*|G| + g, right l*|H| + h, product (k*dimB + l)*|G||H| + g*|H| + h.
  auto psi_index = [&](std::size_t i, std::size_t j) {
    const std::size_t k = i / gl, g = i % gl, l = j / gr, h = j % gr;
    return (k * dr + l) * (gl * gr) + g * gr + h;
  };
  const auto& lb = left.algebra().basis();
  const auto& rb = right.algebra().basis();
  const auto& pb = product.algebra().basis();
  for (std::size_t i1 = 0; i1 < nl; ++i1)
    for (std::size_t i2 = 0; i2 < nl; ++i2) {
      auto cl = left.algebra().coordinates(lb[i1] * lb[i2]);
      if (!cl) return false;
      for (std::size_t j1 = 0; j1 < nr; ++j1)
        for (std::size_t j2 = 0; j2 < nr; ++j2) {
          auto cr = right.algebra().coordinates(rb[j1] * rb[j2]);
          if (!cr) return false;
          CMatrix mapped(product.dimension(), product.dimension());
          for (std::size_t a = 0; a < nl; ++a) {
            if ((*cl)[a].is_zero()) continue;
            for (std::size_t b = 0; b < nr; ++b)
              if (!(*cr)[b].is_zero()) mapped += ((*cl)[a] * (*cr)[b]) * pb[psi_index(a, b)];
          }
          if (!(mapped == pb[psi_index(i1, j1)] * pb[psi_index(i2, j2)])) return false;
        }
    }
  return true;
}

}  // namespace lpg
