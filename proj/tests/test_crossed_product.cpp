#include <gtest/gtest.h>

#include <random>

#include "lpg/catalog.hpp"
#include "lpg/crossed_product.hpp"
#include "lpg/errors.hpp"

using namespace lpg;
using namespace lpg::catalog;

namespace {

CMatrix swap2() {
  CMatrix s(2, 2);
  s(0, 1) = s(1, 0) = GaussRational(1);
  return s;
}

IsometricAlgebraAction adswap_on_m2() {
  return IsometricAlgebraAction::make(cyclic_group(2), RepresentedAlgebra::full_matrix(2), {CMatrix::identity(2), swap2()});
}

CrossedElement random_crossed(const CrossedProduct& cp, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  CrossedElement x;
  const auto& alg = cp.action().algebra();
  for (std::size_t g = 0; g < cp.order(); ++g) {
    std::vector<GaussRational> c;
    for (std::size_t k = 0; k < alg.dimension(); ++k) c.emplace_back(Rational(d(rng)), Rational(d(rng)));
    x.coefficients.push_back(alg.element(c));
  }
  return x;
}

std::vector<CrossedProduct> catalog_products() {
  std::vector<CrossedProduct> out;
  out.emplace_back(trivial_algebra_action(cyclic_group(2), RepresentedAlgebra::full_matrix(2)));
  out.emplace_back(adswap_on_m2());
  out.emplace_back(function_algebra_action(rotation_action(2, 2)));
  out.emplace_back(function_algebra_action(rotation_action(3, 3)));
  out.emplace_back(trivial_algebra_action(cyclic_group(2), RepresentedAlgebra::scalars(1)));
  return out;
}

}  // namespace

TEST(Action, RejectsBadImplementers) {
  CMatrix rot(2, 2);
  rot(0, 0) = rot(1, 0) = rot(1, 1) = GaussRational(1);
  EXPECT_THROW(IsometricAlgebraAction::make(cyclic_group(2), RepresentedAlgebra::full_matrix(2), {CMatrix::identity(2), rot}),
               std::invalid_argument);
  // Swap conjugation does not preserve upper-triangular matrices.
  EXPECT_THROW(
      IsometricAlgebraAction::make(cyclic_group(2), RepresentedAlgebra::upper_triangular(2), {CMatrix::identity(2), swap2()}),
      std::invalid_argument);
  // Not a homomorphism: Z_3 with the swap as generator.
  CMatrix id3 = CMatrix::identity(2);
  EXPECT_THROW(IsometricAlgebraAction::make(cyclic_group(3), RepresentedAlgebra::full_matrix(2), {id3, swap2(), swap2()}),
               std::invalid_argument);
}

TEST(Regular, TrivialGroupIsIdentity) {
  CrossedProduct cp(trivial_algebra_action(trivial_group(), RepresentedAlgebra::full_matrix(2)));
  EXPECT_EQ(cp.dimension(), 2u);
  EXPECT_EQ(cp.pi(CMatrix::unit(2, 0, 1)), CMatrix::unit(2, 0, 1));
  EXPECT_TRUE(cp.algebra().same_span(RepresentedAlgebra::full_matrix(2)));
}

TEST(Regular, AdSwapOnM2) {
  CrossedProduct cp(adswap_on_m2());
  EXPECT_EQ(cp.dimension(), 4u);
  EXPECT_EQ(cp.algebra().dimension(), 8u);
  // v_g is the block permutation exchanging the two copies.
  CMatrix v = cp.v(1);
  for (std::size_t x = 0; x < 2; ++x) {
    EXPECT_EQ(v(2 + x, x), GaussRational(1));
    EXPECT_EQ(v(x, 2 + x), GaussRational(1));
  }
}

TEST(Regular, GroupAlgebraDegeneration) {
  CrossedProduct cp(trivial_algebra_action(cyclic_group(2), RepresentedAlgebra::scalars(1)));
  EXPECT_EQ(cp.dimension(), 2u);
  EXPECT_EQ(cp.v(1), swap2());
  EXPECT_EQ(cp.algebra().dimension(), 2u);
}

TEST(Regular, CovarianceAndMultiplicativity) {
  std::mt19937_64 rng(1);
  for (const auto& cp : catalog_products()) {
    const auto& grp = cp.action().group();
    for (int g = 0; g < static_cast<int>(cp.order()); ++g)
      for (const auto& b : cp.action().algebra().basis())
        EXPECT_EQ(cp.v(g) * cp.pi(b) * cp.v(grp.inverse(g)), cp.pi(cp.action().alpha(g, b)));
    for (int t = 0; t < 5; ++t) {
      auto x = random_crossed(cp, rng), y = random_crossed(cp, rng);
      // Product of formal sums: (a u_g)(b u_h) = a α_g(b) u_gh.
      CrossedElement xy;
      xy.coefficients.assign(cp.order(), CMatrix(cp.block(), cp.block()));
      for (int g = 0; g < static_cast<int>(cp.order()); ++g)
        for (int h = 0; h < static_cast<int>(cp.order()); ++h)
          xy.coefficients[static_cast<std::size_t>(grp.mul(g, h))] +=
              x.coefficients[static_cast<std::size_t>(g)] * cp.action().alpha(g, y.coefficients[static_cast<std::size_t>(h)]);
      EXPECT_EQ(cp.image(xy), cp.image(x) * cp.image(y));
    }
  }
}

TEST(Expectation, Examples) {
  std::mt19937_64 rng(2);
  for (const auto& cp : catalog_products()) {
    const auto& basis = cp.action().algebra().basis();
    EXPECT_EQ(cp.conditional_expectation(cp.pi(basis.back())), basis.back());
    for (int g = 0; g < static_cast<int>(cp.order()); ++g)
      if (g != cp.action().group().identity()) EXPECT_TRUE(cp.conditional_expectation(cp.v(g)).is_zero());
    for (int t = 0; t < 5; ++t) {
      auto x = random_crossed(cp, rng);
      EXPECT_EQ(cp.conditional_expectation(cp.image(x)),
                x.coefficients[static_cast<std::size_t>(cp.action().group().identity())]);
      auto back = cp.coefficients_of(cp.image(x));
      ASSERT_TRUE(back.has_value());
      for (std::size_t g = 0; g < cp.order(); ++g) EXPECT_EQ(back->coefficients[g], x.coefficients[g]);
    }
  }
  CrossedProduct cp(adswap_on_m2());
  EXPECT_THROW(cp.conditional_expectation(CMatrix::unit(4, 0, 3)), std::invalid_argument);
}

TEST(Expectation, BimoduleAndFaithful) {
  std::mt19937_64 rng(3);
  for (const auto& cp : catalog_products()) {
    auto x = random_crossed(cp, rng);
    auto a = random_crossed(cp, rng).coefficients[0];
    auto b = random_crossed(cp, rng).coefficients[0];
    CMatrix X = cp.image(x);
    EXPECT_EQ(cp.conditional_expectation(cp.pi(a) * X * cp.pi(b)), a * cp.conditional_expectation(X) * b);
    // E(x u_g⁻¹) recovers a_g, so E vanishing on every translate forces x = 0.
    const auto& grp = cp.action().group();
    for (int g = 0; g < static_cast<int>(cp.order()); ++g) {
      CMatrix coeff = cp.conditional_expectation(X * cp.v(grp.inverse(g)));
      EXPECT_EQ(coeff, x.coefficients[static_cast<std::size_t>(g)]);
    }
  }
}

TEST(CoreTheorem, Catalog) {
  for (const auto& cp : catalog_products()) {
    for (const auto& p : {PExponent(Rational(1)), PExponent(Rational(3))}) {
      auto rep = verify_core_theorem(cp, p);
      EXPECT_TRUE(rep.passed());
      EXPECT_EQ(rep.core_dimension, rep.crossed_core_dimension);
    }
  }
  EXPECT_EQ(verify_core_theorem(CrossedProduct(trivial_algebra_action(cyclic_group(2), RepresentedAlgebra::full_matrix(2))),
                                PExponent(Rational(3)))
                .core_dimension,
            2u);
  EXPECT_EQ(verify_core_theorem(catalog_products()[4], PExponent(Rational(3))).crossed_core_dimension, 1u);
  EXPECT_THROW(verify_core_theorem(catalog_products()[0], PExponent(Rational(2))), ExcludedExponent);
}

TEST(Transformation, MatchesGroupoidAlgebra) {
  std::mt19937_64 rng(4);
  for (const auto& act : {rotation_action(2, 2), rotation_action(3, 3), translation_action(symmetric_group3())}) {
    CrossedProduct cp(function_algebra_action(act));
    auto g = std::make_shared<const FiniteGroupoid>(transformation_groupoid(act));
    EXPECT_EQ(cp.algebra().dimension(), g->size());
    // Basis products map to convolution products.
    std::vector<CrossedElement> basis;
    for (std::size_t k = 0; k < act.points(); ++k)
      for (std::size_t h = 0; h < cp.order(); ++h) {
        CrossedElement e;
        e.coefficients.assign(cp.order(), CMatrix(cp.block(), cp.block()));
        e.coefficients[h] = CMatrix::unit(cp.block(), k, k);
        basis.push_back(e);
      }
    for (const auto& x : basis)
      for (const auto& y : basis) {
        auto prod = cp.coefficients_of(cp.image(x) * cp.image(y));
        ASSERT_TRUE(prod.has_value());
        EXPECT_EQ(crossed_to_groupoid(cp, act, g, *prod),
                  convolve(crossed_to_groupoid(cp, act, g, x), crossed_to_groupoid(cp, act, g, y)));
      }
    for (int t = 0; t < 5; ++t) {
      auto x = random_crossed(cp, rng);
      for (const auto& p : {PExponent(Rational(1)), PExponent(Rational(3, 2)), PExponent(Rational(3))}) {
        auto ec = p_operator_norm(cp.image(x), p);
        auto eg = lambda_norm(crossed_to_groupoid(cp, act, g, x), p);
        EXPECT_LE(ec.lower, eg.upper + 1e-9);
        EXPECT_LE(eg.lower, ec.upper + 1e-9);
      }
    }
  }
}

TEST(Tensor, CompatibleWithProductAction) {
  auto a = function_algebra_action(rotation_action(2, 2));
  auto b = trivial_algebra_action(cyclic_group(2), RepresentedAlgebra::scalars(1));
  CrossedProduct left(a), right(b), prod(tensor_action(a, b));
  EXPECT_TRUE(verify_tensor_compatibility(left, right, prod));
  auto c = adswap_on_m2();
  CrossedProduct left2(c), prod2(tensor_action(c, b));
  EXPECT_TRUE(verify_tensor_compatibility(left2, right, prod2));
}
