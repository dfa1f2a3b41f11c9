#include <gtest/gtest.h>

#include <random>

#include "lpg/catalog.hpp"
#include "lpg/errors.hpp"
#include "lpg/groupoid_algebra.hpp"

using namespace lpg;
using namespace lpg::catalog;

namespace {

using GPtr = std::shared_ptr<const FiniteGroupoid>;

GPtr share(FiniteGroupoid g) { return std::make_shared<const FiniteGroupoid>(std::move(g)); }

std::vector<GPtr> catalog_ptrs() {
  std::vector<GPtr> out;
  for (auto& ng : acceptance_groupoids()) out.push_back(share(ng.groupoid));
  out.push_back(share(group_groupoid(cyclic_group(3))));
  out.push_back(share(transformation_groupoid(rotation_action(4, 2))));
  return out;
}

ConvElement random_element(const GPtr& g, std::mt19937_64& rng, double density = 0.6) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  std::bernoulli_distribution keep(density);
  std::vector<GaussRational> c(g->size());
  for (auto& z : c)
    if (keep(rng)) z = GaussRational(Rational(d(rng), den(rng)), Rational(d(rng), den(rng)));
  return ConvElement(g, std::move(c));
}

ConvElement random_unit_function(const GPtr& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  std::vector<GaussRational> v;
  for (std::size_t i = 0; i < g->unit_count(); ++i) v.emplace_back(Rational(d(rng)), Rational(d(rng)));
  return ConvElement::on_units(g, v);
}

}  // namespace

TEST(Convolution, DeltaProducts) {
  auto g = share(pair_groupoid(3));
  for (Arrow a = 0; a < 9; ++a)
    for (Arrow b = 0; b < 9; ++b) {
      auto prod = convolve(ConvElement::delta(g, a), ConvElement::delta(g, b));
      if (g->composable(a, b)) {
        EXPECT_EQ(prod, ConvElement::delta(g, g->compose(a, b)));
      } else {
        EXPECT_TRUE(prod.is_zero());
      }
    }
}

TEST(Convolution, UnitIsIdentityAndSwapSquares) {
  std::mt19937_64 rng(1);
  for (const auto& g : catalog_ptrs()) {
    auto f = random_element(g, rng);
    EXPECT_EQ(convolve(ConvElement::unit(g), f), f);
    EXPECT_EQ(convolve(f, ConvElement::unit(g)), f);
  }
  auto p2 = share(pair_groupoid(2));
  auto x = ConvElement::delta(p2, pair_arrow(2, 0, 1)) + ConvElement::delta(p2, pair_arrow(2, 1, 0));
  EXPECT_EQ(convolve(x, x), ConvElement::unit(p2));
}

TEST(Convolution, MatchesDefinitionAndIsAssociative) {
  std::mt19937_64 rng(2);
  for (const auto& g : catalog_ptrs()) {
    for (int t = 0; t < 10; ++t) {
      auto a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
      EXPECT_EQ(convolve(a, b), convolve_by_definition(a, b));
      EXPECT_EQ(convolve(convolve(a, b), c), convolve(a, convolve(b, c)));
    }
  }
  EXPECT_THROW(convolve(ConvElement::unit(share(pair_groupoid(2))), ConvElement::unit(share(unit_groupoid(4)))),
               std::invalid_argument);
}

TEST(INorm, Examples) {
  auto p2 = share(pair_groupoid(2));
  EXPECT_DOUBLE_EQ(i_norm(ConvElement::delta(p2, 1)), 1.0);
  std::vector<GaussRational> ones(4, GaussRational(1));
  EXPECT_DOUBLE_EQ(i_norm(ConvElement(p2, ones)), 2.0);
  EXPECT_DOUBLE_EQ(i_norm(ConvElement::zero(p2)), 0.0);
}

TEST(RegularRep, Examples) {
  auto p2 = share(pair_groupoid(2));
  auto id = regular_representation(ConvElement::unit(p2), p2->units()[0]);
  EXPECT_EQ(id.matrix, CMatrix::identity(2));

  // f = δ_(1,0) at x = 0: G0 = {(0,0), (1,0)}, entry ((1,0),(0,0)) = 1.
  auto rep = regular_representation(ConvElement::delta(p2, pair_arrow(2, 1, 0)), pair_arrow(2, 0, 0));
  ASSERT_EQ(rep.index, (std::vector<Arrow>{pair_arrow(2, 0, 0), pair_arrow(2, 1, 0)}));
  CMatrix expect(2, 2);
  expect(1, 0) = GaussRational(1);
  EXPECT_EQ(rep.matrix, expect);

  auto z2 = share(group_groupoid(cyclic_group(2)));
  auto sw = regular_representation(ConvElement::delta(z2, 1), 0);
  CMatrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = GaussRational(1);
  EXPECT_EQ(sw.matrix, swap);

  EXPECT_THROW(regular_representation(ConvElement::unit(p2), pair_arrow(2, 0, 1)), std::invalid_argument);
}

TEST(RegularRep, Multiplicative) {
  std::mt19937_64 rng(3);
  for (const auto& g : catalog_ptrs()) {
    for (int t = 0; t < 5; ++t) {
      auto f = random_element(g, rng), h = random_element(g, rng);
      for (Arrow x : g->units()) {
        EXPECT_EQ(regular_representation(convolve(f, h), x).matrix,
                  regular_representation(f, x).matrix * regular_representation(h, x).matrix);
      }
    }
  }
}

TEST(LambdaNorm, Examples) {
  for (const auto& g : catalog_ptrs()) {
    for (const auto& p : {PExponent(Rational(1)), PExponent(Rational(3, 2)), PExponent(Rational(3))}) {
      auto e = lambda_norm(ConvElement::unit(g), p);
      EXPECT_NEAR(e.lower, 1.0, 1e-12);
      EXPECT_NEAR(e.upper, 1.0, 1e-12);
    }
  }
}

TEST(LambdaNorm, Sandwich) {
  std::mt19937_64 rng(4);
  for (const auto& g : catalog_ptrs()) {
    for (int t = 0; t < 20; ++t) {
      auto f = random_element(g, rng);
      for (const auto& p : {PExponent(Rational(1)), PExponent(Rational(3, 2)), PExponent(Rational(3))}) {
        auto e = lambda_norm(f, p);
        EXPECT_LE(sup_norm(f), e.lower + 1e-9);
        EXPECT_LE(e.upper, i_norm(f) + 1e-9);
      }
      auto u = random_unit_function(g, rng);
      auto e = lambda_norm(u, PExponent(Rational(3)));
      EXPECT_NEAR(e.lower, sup_norm(u), 1e-9);
      EXPECT_NEAR(e.upper, sup_norm(u), 1e-9);
    }
  }
}

TEST(LambdaNorm, DeltaMultipliersAreContractive) {
  std::mt19937_64 rng(5);
  const PExponent p(Rational(3));
  for (const auto& g : catalog_ptrs()) {
    auto f = random_element(g, rng);
    auto ef = lambda_norm(f, p);
    for (Arrow a = 0; a < static_cast<Arrow>(g->size()); ++a) {
      auto d = ConvElement::delta(g, a);
      EXPECT_LE(lambda_norm(convolve(d, f), p).lower, ef.upper + 1e-9);
      EXPECT_LE(lambda_norm(convolve(f, d), p).lower, ef.upper + 1e-9);
    }
  }
}

TEST(LambdaNorm, SerialAndParallelAgree) {
  std::mt19937_64 rng(6);
  auto g = catalog_ptrs().back();
  auto f = random_element(g, rng);
  NormOptions s, par;
  s.policy = ExecutionPolicy::Serial;
  auto a = lambda_norm(f, PExponent(Rational(3)), s);
  auto b = lambda_norm(f, PExponent(Rational(3)), par);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.upper, b.upper);
}

TEST(JMap, ReproducesCoefficients) {
  std::mt19937_64 rng(7);
  auto p3 = share(pair_groupoid(3));
  for (Arrow a = 0; a < 9; ++a) EXPECT_EQ(j_map(ConvElement::delta(p3, a)), ConvElement::delta(p3, a).coefficients());
  for (const auto& g : catalog_ptrs())
    for (int t = 0; t < 10; ++t) {
      auto a = random_element(g, rng);
      EXPECT_EQ(j_map(a), a.coefficients());
    }
}

TEST(JMap, ConvolutionFormula) {
  std::mt19937_64 rng(8);
  for (const auto& g : catalog_ptrs())
    for (int t = 0; t < 10; ++t) {
      auto a = random_element(g, rng), b = random_element(g, rng);
      auto jab = j_map(convolve(a, b));
      auto ja = j_map(a), jb = j_map(b);
      for (Arrow gamma = 0; gamma < static_cast<Arrow>(g->size()); ++gamma) {
        GaussRational sum;
        for (Arrow s : g->source_fiber(g->dom(gamma)))
          sum += ja[static_cast<std::size_t>(g->compose(gamma, g->inverse(s)))] * jb[static_cast<std::size_t>(s)];
        EXPECT_EQ(jab[static_cast<std::size_t>(gamma)], sum);
      }
    }
}

TEST(JMap, MoveDeltaAndSlices) {
  std::mt19937_64 rng(9);
  for (const auto& g : catalog_ptrs()) {
    auto a = random_element(g, rng);
    auto j = j_map(a);
    for (Arrow x : g->units()) {
      auto rep = regular_representation(a, x);
      for (std::size_t si = 0; si < rep.index.size(); ++si)
        for (std::size_t gi = 0; gi < rep.index.size(); ++gi) {
          Arrow s = rep.index[si], gamma = rep.index[gi];
          auto other = regular_representation(a, g->ran(s));
          Arrow moved = g->compose(gamma, g->inverse(s));
          auto it = std::find(other.index.begin(), other.index.end(), moved);
          auto ot = std::find(other.index.begin(), other.index.end(), other.unit);
          ASSERT_NE(it, other.index.end());
          EXPECT_EQ(rep.matrix(gi, si), other.matrix(static_cast<std::size_t>(it - other.index.begin()),
                                                     static_cast<std::size_t>(ot - other.index.begin())));
        }
      auto l = left_slice(a, x);
      auto r = right_slice(a, x);
      for (std::size_t k = 0; k < rep.index.size(); ++k) {
        EXPECT_EQ(l[k], j[static_cast<std::size_t>(rep.index[k])]);
        EXPECT_EQ(r[k], j[static_cast<std::size_t>(g->inverse(rep.index[k]))]);
      }
    }
  }
}

TEST(ConditionalExpectation, Examples) {
  std::mt19937_64 rng(10);
  auto p2 = share(pair_groupoid(2));
  auto u = random_unit_function(p2, rng);
  EXPECT_EQ(conditional_expectation(u), u);
  EXPECT_TRUE(conditional_expectation(ConvElement::delta(p2, pair_arrow(2, 0, 1))).is_zero());
  for (const auto& g : catalog_ptrs())
    for (int t = 0; t < 10; ++t) {
      auto a = random_element(g, rng);
      auto f = random_unit_function(g, rng), h = random_unit_function(g, rng);
      EXPECT_EQ(conditional_expectation(convolve(convolve(f, a), h)), convolve(convolve(f, conditional_expectation(a)), h));
      EXPECT_TRUE(conditional_expectation(a).supported_on_units());
    }
}

TEST(GroupoidCore, Examples) {
  const PExponent p3(Rational(3));
  auto u = core_of_groupoid_algebra(unit_groupoid(3), p3);
  EXPECT_EQ(u.result.core.dimension(), 3u);
  auto z2 = core_of_groupoid_algebra(group_groupoid(cyclic_group(2)), p3);
  EXPECT_EQ(z2.result.core.dimension(), 1u);
  auto swap = core_of_groupoid_algebra(transformation_groupoid(rotation_action(2, 2)), p3);
  EXPECT_EQ(swap.result.core.dimension(), 2u);
  EXPECT_THROW(core_of_groupoid_algebra(pair_groupoid(2), PExponent(Rational(2))), ExcludedExponent);
}

TEST(GroupoidCore, PreservedByExpectation) {
  // E maps the core (unit functions) onto itself.
  std::mt19937_64 rng(11);
  for (const auto& g : catalog_ptrs()) {
    auto f = random_unit_function(g, rng);
    EXPECT_EQ(conditional_expectation(f), f);
  }
}
