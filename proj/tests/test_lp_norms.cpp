#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lpg/errors.hpp"
#include "lpg/lp_norms.hpp"

using namespace lpg;

namespace {

const std::vector<PExponent> kExponents{PExponent(Rational(1)), PExponent(Rational(3, 2)), PExponent(Rational(2)),
                                        PExponent(Rational(3)), PExponent(Rational(7, 2))};

CMatrix from_ints(const std::vector<std::vector<int>>& rows) {
  CMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = GaussRational(rows[r][c]);
  return m;
}

FMatrix random_matrix(std::mt19937_64& rng, int n, bool nonneg) {
  std::normal_distribution<double> d;
  FMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = nonneg ? std::complex<double>(std::abs(d(rng)), 0) : std::complex<double>(d(rng), d(rng));
  return m;
}

// Brute-force lower bound: sample the unit sphere of ℓ^p.
double sampled_norm(const FMatrix& m, double p, std::mt19937_64& rng, int samples) {
  std::normal_distribution<double> d;
  double best = 0;
  for (int s = 0; s < samples; ++s) {
    FVector x(m.cols());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = {d(rng), d(rng)};
    best = std::max(best, kernels::lp_norm(m * x, p) / kernels::lp_norm(x, p));
  }
  return best;
}

}  // namespace

TEST(PExponent, DualAndGuards) {
  EXPECT_TRUE(std::isinf(PExponent(Rational(1)).dual()));
  EXPECT_DOUBLE_EQ(PExponent(Rational(3)).dual(), 1.5);
  EXPECT_THROW(PExponent(Rational(1, 2)), std::invalid_argument);
  EXPECT_THROW(PExponent(Rational(2)).require_not_two("x"), ExcludedExponent);
  EXPECT_NO_THROW(PExponent(Rational(3)).require_not_two("x"));
}

TEST(Norm, IdentityIsOne) {
  for (const auto& p : kExponents) {
    auto e = p_operator_norm(CMatrix::identity(4), p);
    EXPECT_NEAR(e.lower, 1.0, 1e-12);
    EXPECT_NEAR(e.upper, 1.0, 1e-12);
  }
}

TEST(Norm, AllOnesMatrixIsN) {
  for (int n : {2, 3, 5}) {
    FMatrix j = FMatrix::Ones(n, n);
    for (const auto& p : kExponents) {
      auto e = p_operator_norm(j, p);
      EXPECT_NEAR(e.lower, n, 1e-9) << p.to_string();
      EXPECT_NEAR(e.upper, n, 1e-9) << p.to_string();
    }
  }
}

TEST(Norm, DiagonalIsMaxModulus) {
  FMatrix d = FMatrix::Zero(3, 3);
  d(0, 0) = {0.5, 0};
  d(1, 1) = {0, -2};
  d(2, 2) = {1, 1};
  for (const auto& p : kExponents) {
    auto e = p_operator_norm(d, p);
    EXPECT_NEAR(e.lower, 2.0, 1e-9);
    EXPECT_NEAR(e.upper, 2.0, 1e-9);
  }
}

TEST(Norm, Errors) {
  EXPECT_THROW(p_operator_norm(FMatrix(0, 0), PExponent(Rational(3))), std::invalid_argument);
  FMatrix bad = FMatrix::Ones(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(p_operator_norm(bad, PExponent(Rational(3))), std::invalid_argument);
}

TEST(Norm, IntervalContainsSampledValues) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    FMatrix m = random_matrix(rng, 4, trial % 2 == 0);
    for (const auto& p : kExponents) {
      auto e = p_operator_norm(m, p);
      EXPECT_LE(e.lower, e.upper);
      if (p.is_one() || p.is_two()) EXPECT_NEAR(e.lower, e.upper, 1e-12);
      double s = sampled_norm(m, p.value(), rng, 200);
      EXPECT_LE(s, e.upper * (1 + 1e-12));
    }
  }
}

TEST(Norm, NonnegativeTaggedExact) {
  std::mt19937_64 rng(3);
  FMatrix m = random_matrix(rng, 5, true);
  auto e = p_operator_norm(m, PExponent(Rational(3)));
  EXPECT_TRUE(e.method == NormMethod::NonnegExact || e.method == NormMethod::Interpolation);
  EXPECT_LE(e.width(), 1e-8 * e.upper);
}

TEST(Norm, ProductBoundedBySubmultiplicativity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    FMatrix a = random_matrix(rng, 3, false);
    FMatrix b = random_matrix(rng, 3, false);
    for (const auto& p : kExponents) {
      auto ab = p_operator_norm(FMatrix(a * b), p);
      auto ea = p_operator_norm(a, p);
      auto eb = p_operator_norm(b, p);
      EXPECT_LE(ab.lower, ea.upper * eb.upper * (1 + 1e-12));
      EXPECT_LE(ab.lower, ab.upper);
    }
  }
}

TEST(Norm, LowerMonotoneInRestarts) {
  std::mt19937_64 rng(9);
  FMatrix m = random_matrix(rng, 6, false);
  double previous = 0;
  for (int starts : {0, 2, 4, 8, 16}) {
    NormOptions o;
    o.random_starts = starts;
    auto e = p_operator_norm(m, PExponent(Rational(3)), o);
    EXPECT_GE(e.lower, previous);
    previous = e.lower;
  }
}

TEST(Norm, SerialAndParallelAgree) {
  std::mt19937_64 rng(21);
  FMatrix m = random_matrix(rng, 8, false);
  NormOptions s, par;
  s.policy = ExecutionPolicy::Serial;
  par.policy = ExecutionPolicy::Parallel;
  auto a = p_operator_norm(m, PExponent(Rational(3)), s);
  auto b = p_operator_norm(m, PExponent(Rational(3)), par);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.upper, b.upper);
}

TEST(Lamperti, Examples) {
  PExponent p3(Rational(3));
  EXPECT_TRUE(is_lamperti_isometry(from_ints({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), p3));
  CMatrix phase = CMatrix::diagonal({GaussRational::i(), GaussRational(-1)});
  EXPECT_TRUE(is_lamperti_isometry(phase, p3));
  CMatrix rot(2, 2);
  rot(0, 0) = rot(1, 0) = rot(1, 1) = GaussRational(Rational(1, 2));
  rot(0, 1) = GaussRational(Rational(-1, 2));
  EXPECT_FALSE(is_lamperti_isometry(rot, p3));
  EXPECT_THROW(is_lamperti_isometry(rot, PExponent(Rational(2))), ExcludedExponent);

  auto id = lamperti_decompose(CMatrix::identity(3), p3);
  EXPECT_EQ(id.permutation, (std::vector<int>{0, 1, 2}));
  auto sw = lamperti_decompose(from_ints({{0, 1}, {1, 0}}), p3);
  EXPECT_EQ(sw.permutation, (std::vector<int>{1, 0}));
  EXPECT_EQ(sw.diagonal, (std::vector<GaussRational>{GaussRational(1), GaussRational(1)}));
  EXPECT_THROW(lamperti_decompose(rot, p3), std::invalid_argument);
}

TEST(Lamperti, RandomRoundTrip) {
  std::mt19937_64 rng(1);
  // Unimodular Gaussian rationals: (a² − b² + 2abi)/(a² + b²).
  auto unimodular = [&]() {
    std::uniform_int_distribution<int> d(-4, 4);
    int a = 0, b = 0;
    while (a == 0 && b == 0) {
      a = d(rng);
      b = d(rng);
    }
    Rational n(a * a + b * b);
    return GaussRational(Rational(a * a - b * b) / n, Rational(2 * a * b) / n);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<GaussRational> diag;
    for (int i = 0; i < n; ++i) diag.push_back(unimodular());
    LampertiFactorization f{diag, perm};
    auto back = lamperti_decompose(f.recompose(), PExponent(Rational(3)));
    EXPECT_EQ(back.diagonal, diag);
    EXPECT_EQ(back.permutation, perm);
  }
}

TEST(Algebra, ValidationRejectsNonClosedSpan) {
  EXPECT_THROW(RepresentedAlgebra::make(2, {CMatrix::identity(2), CMatrix::unit(2, 0, 1), CMatrix::unit(2, 1, 0)}, true),
               std::invalid_argument);
  EXPECT_THROW(RepresentedAlgebra::make(2, {CMatrix::identity(2), CMatrix::identity(2)}, true), std::invalid_argument);
  EXPECT_THROW(RepresentedAlgebra::make(2, {CMatrix::unit(2, 0, 0)}, true), std::invalid_argument);
  auto gen = RepresentedAlgebra::generated_by(2, {CMatrix::unit(2, 0, 1), CMatrix::unit(2, 1, 0)}, true);
  EXPECT_EQ(gen.dimension(), 4u);
}

TEST(Core, Examples) {
  PExponent p3(Rational(3)), p2(Rational(2)), p1(Rational(1));
  for (std::size_t n : {2u, 3u, 4u}) {
    for (const auto& p : {p1, p3}) {
      auto c = core_of(RepresentedAlgebra::full_matrix(n), p);
      EXPECT_TRUE(c.core.same_span(RepresentedAlgebra::diagonal(n)));
      EXPECT_EQ(c.core.dimension(), n);
      EXPECT_TRUE(c.commutative);
    }
  }
  auto sc = core_of(RepresentedAlgebra::scalars(3), p3);
  EXPECT_TRUE(sc.core.same_span(RepresentedAlgebra::scalars(3)));
  auto ut = core_of(RepresentedAlgebra::upper_triangular(2), p3);
  EXPECT_TRUE(ut.core.same_span(RepresentedAlgebra::diagonal(2)));
  auto m2 = core_of(RepresentedAlgebra::full_matrix(2), p2);
  EXPECT_EQ(m2.core.dimension(), 4u);
  EXPECT_FALSE(m2.commutative);

  auto nonunital = RepresentedAlgebra::make(2, {CMatrix::unit(2, 0, 0)}, false);
  EXPECT_THROW(core_of(nonunital, p3), std::invalid_argument);
}

TEST(Core, IdempotentAndHermitianBasisProperties) {
  PExponent p3(Rational(3));
  auto a = RepresentedAlgebra::generated_by(
      3, {from_ints({{1, 1, 0}, {0, 2, 0}, {0, 0, 1}}), from_ints({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}})}, true);
  auto c = core_of(a, p3);
  EXPECT_TRUE(a.contains_all(c.core));
  auto cc = core_of(c.core, p3);
  EXPECT_TRUE(cc.core.same_span(c.core));
  for (const auto& h : c.hermitian_basis) {
    EXPECT_TRUE(h.is_diagonal());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(h(i, i).is_real());
  }
}

TEST(Spectrum, Examples) {
  EXPECT_EQ(spectrum_points(RepresentedAlgebra::scalars(3)).size(), 1u);
  EXPECT_EQ(spectrum_points(RepresentedAlgebra::diagonal(3)).size(), 3u);
  auto c = RepresentedAlgebra::make(3, {CMatrix::identity(3), CMatrix::diagonal({1, 1, 0})}, true);
  auto s = spectrum_points(c);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.class_of[0], s.class_of[1]);
  EXPECT_NE(s.class_of[0], s.class_of[2]);
  EXPECT_THROW(spectrum_points(RepresentedAlgebra::full_matrix(2)), std::invalid_argument);
  auto f = as_function_on(s, CMatrix::diagonal({5, 5, 7}));
  ASSERT_TRUE(f.has_value());
  EXPECT_FALSE(as_function_on(s, CMatrix::diagonal({5, 6, 7})).has_value());
}

TEST(Hermitian, Examples) {
  PExponent p1(Rational(1)), p2(Rational(2)), p3(Rational(3));
  auto diag = RepresentedAlgebra::diagonal(2);
  auto v = is_hermitian(diag, CMatrix::diagonal({1, -2}), p3);
  EXPECT_TRUE(v.hermitian);
  EXPECT_TRUE(v.agree());
  auto w = is_hermitian(diag, CMatrix::diagonal({GaussRational::i(), GaussRational::i()}), p3);
  EXPECT_FALSE(w.hermitian);
  EXPECT_TRUE(w.agree());
  auto m2 = RepresentedAlgebra::full_matrix(2);
  CMatrix inv = from_ints({{0, 1}, {1, 0}});
  auto one = is_hermitian(m2, inv, p1);
  EXPECT_FALSE(one.hermitian);
  EXPECT_TRUE(one.agree());
  auto two = is_hermitian(m2, inv, p2);
  EXPECT_TRUE(two.hermitian);
  EXPECT_TRUE(two.agree());
  auto three = is_hermitian(m2, inv, p3);
  EXPECT_FALSE(three.hermitian);
  EXPECT_TRUE(three.agree());
  EXPECT_THROW(is_hermitian(diag, inv, p3), std::invalid_argument);
}

TEST(Hermitian, StructuralAndDynamicAgreeOnRandomElements) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(-2, 2);
  std::bernoulli_distribution real_only(0.5);
  auto a = RepresentedAlgebra::upper_triangular(3);
  for (const auto& p : {PExponent(Rational(1)), PExponent(Rational(3))}) {
    for (int trial = 0; trial < 30; ++trial) {
      const bool real = real_only(rng);
      std::vector<GaussRational> coeffs;
      for (std::size_t k = 0; k < a.dimension(); ++k) coeffs.emplace_back(Rational(d(rng)), real ? Rational(0) : Rational(d(rng)));
      auto v = is_hermitian(a, a.element(coeffs), p);
      EXPECT_TRUE(v.agree()) << trial;
    }
  }
}
