#include <gtest/gtest.h>

#include <random>
#include <set>

#include "lpg/catalog.hpp"
#include "lpg/weyl.hpp"

using namespace lpg;
using namespace lpg::catalog;

namespace {

GroupoidModel model_of(FiniteGroupoid g) { return GroupoidModel{std::make_shared<const FiniteGroupoid>(std::move(g))}; }

ConvElement unit_function(const GroupoidModel& m, std::size_t y) {
  return ConvElement::delta(m.groupoid, m.groupoid->units()[y]);
}

// Independent reading of the three conditions, using the literal
// convolution sum and quantifying over every indicator.
AdmissibilityCondition oracle(const GroupoidModel& m, const ConvElement& a, const ConvElement& b) {
  const auto& g = *m.groupoid;
  const std::size_t n = g.unit_count();
  auto at_unit = [&](const ConvElement& e, std::size_t x) { return e[g.units()[x]]; };
  for (std::size_t y = 0; y < n; ++y) {
    for (const auto& e : {convolve_by_definition(convolve_by_definition(a, unit_function(m, y)), b),
                          convolve_by_definition(convolve_by_definition(b, unit_function(m, y)), a)}) {
      if (!e.supported_on_units()) return AdmissibilityCondition::Positivity;
      for (std::size_t x = 0; x < n; ++x)
        if (!at_unit(e, x).is_nonneg_real()) return AdmissibilityCondition::Positivity;
    }
  }
  auto ba = convolve_by_definition(b, a), ab = convolve_by_definition(a, b);
  std::vector<std::size_t> U, V;
  for (std::size_t x = 0; x < n; ++x) {
    if (at_unit(ba, x).is_positive_real()) U.push_back(x);
    if (at_unit(ab, x).is_positive_real()) V.push_back(x);
  }
  if (U.size() != V.size()) return AdmissibilityCondition::Supports;
  // α must exist with f(α(x)) ba(x) = bfa(x) for all f ∈ C_0(V), and the
  // analogous identity for α⁻¹.
  for (std::size_t x : U) {
    int count = 0;
    for (std::size_t y : V) {
      auto v = at_unit(convolve_by_definition(convolve_by_definition(b, unit_function(m, y)), a), x);
      if (v == at_unit(ba, x)) ++count;
      else if (!v.is_zero()) return AdmissibilityCondition::Realization;
    }
    if (count != 1) return AdmissibilityCondition::Realization;
  }
  for (std::size_t y : V) {
    int count = 0;
    for (std::size_t x : U) {
      auto v = at_unit(convolve_by_definition(convolve_by_definition(a, unit_function(m, x)), b), y);
      if (v == at_unit(ab, y)) ++count;
      else if (!v.is_zero()) return AdmissibilityCondition::Realization;
    }
    if (count != 1) return AdmissibilityCondition::Realization;
  }
  return AdmissibilityCondition::None;
}

std::vector<Rational> random_weight(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 4);
  std::vector<Rational> h;
  for (std::size_t i = 0; i < n; ++i) h.emplace_back(num(rng), den(rng));
  return h;
}

std::vector<GroupoidModel> principal_models() {
  std::vector<GroupoidModel> out;
  for (auto& ng : acceptance_groupoids())
    if (ng.groupoid.size() <= 9) out.push_back(model_of(ng.groupoid));
  return out;
}

}  // namespace

TEST(Admissible, UnitPairIsIdentity) {
  for (const auto& m : principal_models()) {
    auto one = ConvElement::unit(m.groupoid);
    auto r = check_admissible(m, one, one);
    ASSERT_TRUE(r);
    EXPECT_EQ(r.homeo->alpha, PartialBijection::identity(m.points()));
  }
}

TEST(Admissible, NegativePairRejectedAtPositivity) {
  auto m = model_of(pair_groupoid(2));
  Arrow gamma = pair_arrow(2, 1, 0);
  auto a = ConvElement::delta(m.groupoid, gamma);
  auto b = GaussRational(-1) * ConvElement::delta(m.groupoid, m.groupoid->inverse(gamma));
  auto r = check_admissible(m, a, b);
  EXPECT_FALSE(r);
  EXPECT_EQ(r.violated, AdmissibilityCondition::Positivity);
}

TEST(Admissible, ConjugatePairsRealizeIdentity) {
  // (f, conj f) realizes the identity on the support of f.
  auto m = model_of(pair_groupoid(3));
  std::vector<GaussRational> f{GaussRational(Rational(1), Rational(2)), GaussRational(0), GaussRational(Rational(-3))};
  std::vector<GaussRational> fbar;
  for (const auto& z : f) fbar.push_back(z.conj());
  auto r = check_admissible(m, ConvElement::on_units(m.groupoid, f), ConvElement::on_units(m.groupoid, fbar));
  ASSERT_TRUE(r);
  EXPECT_EQ(r.homeo->U, (std::vector<int>{0, 2}));
  EXPECT_EQ(r.homeo->alpha.image, (std::vector<int>{0, -1, 2}));
}

TEST(PairFromBisection, Examples) {
  auto act = rotation_action(2, 2);
  auto m = model_of(transformation_groupoid(act));
  auto swap = make_bisection(*m.groupoid, {transformation_arrow(act, 1, 0), transformation_arrow(act, 1, 1)});
  auto s = pair_from_bisection(m, swap);
  EXPECT_EQ(s.realized->alpha.image, (std::vector<int>{1, 0}));

  auto p2 = model_of(pair_groupoid(2));
  Arrow gamma = pair_arrow(2, 1, 0);
  auto single = pair_from_bisection(p2, make_bisection(*p2.groupoid, {gamma}), std::vector<Rational>{Rational(2), Rational(5)});
  auto ba = convolve(single.b, single.a);
  EXPECT_EQ(ba, GaussRational(4) * ConvElement::delta(p2.groupoid, p2.groupoid->dom(gamma)));
  EXPECT_THROW(pair_from_bisection(p2, make_bisection(*p2.groupoid, {gamma}), std::vector<Rational>{Rational(0), Rational(1)}),
               std::invalid_argument);
}

TEST(PairFromBisection, RealizesBetaForAllBisections) {
  for (const auto& m : principal_models())
    for (const auto& s : enumerate_bisections(*m.groupoid))
      EXPECT_EQ(pair_from_bisection(m, s).realized->alpha, bisection_action(*m.groupoid, s));
}

TEST(ComposePairs, InverseSemigroupLaws) {
  auto m = model_of(pair_groupoid(3));
  auto bis = enumerate_bisections(*m.groupoid);
  auto unit = pair_from_bisection(m, make_bisection(*m.groupoid, m.groupoid->units()));
  for (std::size_t i = 0; i < bis.size(); i += 3) {
    auto s = pair_from_bisection(m, bis[i]);
    auto sr = reverse_pair(m, s);
    EXPECT_EQ(sr.realized->alpha, s.realized->alpha.inverse());
    auto ssr = compose_pairs(m, s, sr);
    EXPECT_EQ(ssr.realized->alpha, PartialBijection::identity(3).restricted_to([&] {
      std::vector<bool> keep(3, false);
      for (int y : s.realized->V) keep[static_cast<std::size_t>(y)] = true;
      return keep;
    }()));
    EXPECT_EQ(compose_pairs(m, s, unit).realized->alpha, s.realized->alpha);
    for (std::size_t j = 0; j < bis.size(); j += 5) {
      auto t = pair_from_bisection(m, bis[j]);
      EXPECT_EQ(compose_pairs(m, s, t).realized->alpha, s.realized->alpha.after(t.realized->alpha));
    }
  }
}

TEST(ComposePairs, ClosureAddsNoNewMaps) {
  for (const auto& m : principal_models()) {
    auto bis = enumerate_bisections(*m.groupoid);
    std::set<PartialBijection> induced;
    std::vector<GroupoidPair> pairs;
    for (const auto& s : bis) {
      pairs.push_back(pair_from_bisection(m, s));
      induced.insert(bisection_action(*m.groupoid, s));
    }
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (std::size_t j = 0; j < pairs.size(); j += 2) {
        EXPECT_TRUE(induced.count(compose_pairs(m, pairs[i], pairs[j]).realized->alpha));
      }
    for (const auto& s : pairs) EXPECT_TRUE(induced.count(reverse_pair(m, s).realized->alpha));
  }
}

TEST(BisectionFromPair, RoundTripWithRandomWeights) {
  std::mt19937_64 rng(1);
  for (const auto& m : principal_models())
    for (const auto& s : enumerate_bisections(*m.groupoid))
      for (int t = 0; t < 3; ++t) {
        auto pair = pair_from_bisection(m, s, random_weight(rng, m.points()));
        EXPECT_EQ(bisection_from_pair(m, pair), s);
      }
  auto m = model_of(pair_groupoid(3));
  auto one = ConvElement::unit(m.groupoid);
  EXPECT_EQ(bisection_from_pair(m, GroupoidPair{one, one, std::nullopt}).arrows, m.groupoid->units());
  EXPECT_THROW(bisection_from_pair(model_of(group_groupoid(cyclic_group(2))), GroupoidPair{one, one, std::nullopt}),
               std::invalid_argument);
}

TEST(Soundness, RandomPairsAgreeWithOracle) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (const auto& m : principal_models()) {
    const auto& g = *m.groupoid;
    auto bis = enumerate_bisections(g);
    std::uniform_int_distribution<std::size_t> pick(0, bis.size() - 1);
    int accepted = 0;
    for (int t = 0; t < 120; ++t) {
      ConvElement a = ConvElement::zero(m.groupoid), b = ConvElement::zero(m.groupoid);
      if (t % 3 == 0) {
        std::vector<GaussRational> ca(g.size()), cb(g.size());
        for (auto& z : ca) z = GaussRational(coef(rng) * (coef(rng) == 0));
        for (auto& z : cb) z = GaussRational(coef(rng) * (coef(rng) == 0));
        a = ConvElement(m.groupoid, ca);
        b = ConvElement(m.groupoid, cb);
      } else {
        const auto& s = bis[pick(rng)];
        auto ha = random_weight(rng, m.points()), hb = random_weight(rng, m.points());
        std::vector<GaussRational> ca(g.size()), cb(g.size());
        for (Arrow gamma : s.arrows) {
          ca[static_cast<std::size_t>(gamma)] = GaussRational(ha[g.unit_index(g.dom(gamma))]);
          cb[static_cast<std::size_t>(g.inverse(gamma))] = GaussRational(hb[g.unit_index(g.dom(gamma))]);
        }
        if (t % 3 == 2) {
          std::uniform_int_distribution<std::size_t> arrow(0, g.size() - 1);
          ca[arrow(rng)] += GaussRational(coef(rng));
        }
        a = ConvElement(m.groupoid, ca);
        b = ConvElement(m.groupoid, cb);
      }
      auto r = check_admissible(m, a, b);
      EXPECT_EQ(r.violated, oracle(m, a, b));
      if (r) {
        ++accepted;
        auto S = bisection_from_pair(m, GroupoidPair{a, b, r.homeo});
        EXPECT_EQ(bisection_action(g, S), r.homeo->alpha);
      }
    }
    EXPECT_GT(accepted, 0);
  }
}

TEST(Weyl, Examples) {
  const PExponent p3(Rational(3));
  auto pair = weyl_groupoid(pair_groupoid(2), p3);
  ASSERT_TRUE(pair.isomorphism.has_value());
  EXPECT_TRUE(is_isomorphism(pair.germs.groupoid, pair_groupoid(2), *pair.isomorphism));

  auto z2 = weyl_groupoid(group_groupoid(cyclic_group(2)), p3);
  EXPECT_EQ(z2.germs.groupoid.size(), 1u);
  EXPECT_FALSE(z2.isomorphism.has_value());

  auto z3 = weyl_groupoid(transformation_groupoid(rotation_action(3, 3)), PExponent(Rational(1)));
  ASSERT_TRUE(z3.isomorphism.has_value());
  EXPECT_TRUE(find_isomorphism(z3.germs.groupoid, pair_groupoid(3)).map.has_value());

  EXPECT_THROW(weyl_groupoid(pair_groupoid(2), PExponent(Rational(2))), ExcludedExponent);
  WeylOptions tiny;
  tiny.max_bisections = 5;
  EXPECT_THROW(weyl_groupoid(pair_groupoid(3), p3, tiny), GuardExceeded);
}

TEST(Weyl, NonPrincipalGivesPrincipalQuotient) {
  auto w = weyl_groupoid(transformation_groupoid(rotation_action(4, 2)), PExponent(Rational(3)));
  EXPECT_TRUE(is_principal(w.germs.groupoid));
  EXPECT_TRUE(find_isomorphism(w.germs.groupoid, pair_groupoid(2)).map.has_value());
}

TEST(Weyl, SerialAndParallelAgree) {
  WeylOptions s, par;
  s.policy = ExecutionPolicy::Serial;
  auto g = transformation_groupoid(rotation_action(3, 3));
  auto a = weyl_groupoid(g, PExponent(Rational(3)), s);
  auto b = weyl_groupoid(g, PExponent(Rational(3)), par);
  EXPECT_EQ(a.germs.groupoid, b.germs.groupoid);
  EXPECT_EQ(a.distinct_maps, b.distinct_maps);
}

TEST(MatrixModel, AdmissiblePairsInFullMatrixAlgebra) {
  const PExponent p3(Rational(3));
  auto model = MatrixModel::from_algebra(RepresentedAlgebra::full_matrix(3), p3);
  EXPECT_EQ(model.points(), 3u);
  auto r = check_admissible(model, CMatrix::unit(3, 2, 0), CMatrix::unit(3, 0, 2));
  ASSERT_TRUE(r);
  EXPECT_EQ(r.homeo->alpha.image, (std::vector<int>{2, -1, -1}));
  auto bad = check_admissible(model, CMatrix::unit(3, 2, 0), GaussRational(-1) * CMatrix::unit(3, 0, 2));
  EXPECT_EQ(bad.violated, AdmissibilityCondition::Positivity);
  EXPECT_THROW(check_admissible(MatrixModel::from_algebra(RepresentedAlgebra::diagonal(2), p3), CMatrix::unit(2, 0, 1),
                                CMatrix::unit(2, 1, 0)),
               std::invalid_argument);
}
