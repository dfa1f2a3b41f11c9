#include <gtest/gtest.h>

#include <random>

#include "lpg/exact/matrix.hpp"

using namespace lpg::exact;

TEST(Rational, NormalizesAndCompares) {
  Rational a(6, -4);
  EXPECT_EQ(a.num(), -3);
  EXPECT_EQ(a.den(), 2);
  EXPECT_LT(a, Rational(0));
  EXPECT_EQ(a + Rational(3, 2), Rational(0));
  EXPECT_EQ(Rational(1, 3) * Rational(3), Rational(1));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
}

TEST(Rational, ParseForms) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-3/6"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("1.5"), Rational(3, 2));
  EXPECT_EQ(Rational::parse("0.125"), Rational(1, 8));
  EXPECT_THROW(Rational::parse("1/0"), std::exception);
  EXPECT_THROW(Rational::parse("abc"), std::exception);
}

TEST(Rational, OverflowIsDetected) {
  Rational big(std::int64_t{1} << 62);
  EXPECT_THROW(big * big, RationalOverflow);
}

TEST(GaussRational, FieldOperations) {
  GaussRational z(Rational(1), Rational(2));
  GaussRational w(Rational(3), Rational(-1));
  EXPECT_EQ(z * w, GaussRational(Rational(5), Rational(5)));
  EXPECT_EQ((z / w) * w, z);
  EXPECT_EQ(z.conj() * z, GaussRational(Rational(5)));
  EXPECT_EQ(GaussRational::i() * GaussRational::i(), GaussRational(-1));
}

TEST(GaussRational, RoundTripText) {
  for (const char* s : {"0", "1/2", "-3", "i", "-i", "1/2+3/4 i", "-1-2 i", "5/3 i"}) {
    GaussRational z = GaussRational::parse(s);
    EXPECT_EQ(GaussRational::parse(z.to_string()), z) << s;
  }
  EXPECT_EQ(GaussRational::parse("1/2+3/4 i"), GaussRational(Rational(1, 2), Rational(3, 4)));
}

TEST(Matrix, NullspaceOfRankOne) {
  QMatrix m(2, 3);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(0, 2) = 3;
  m(1, 0) = 2;
  m(1, 1) = 4;
  m(1, 2) = 6;
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_TRUE((v[0] + Rational(2) * v[1] + Rational(3) * v[2]).is_zero());
}

TEST(SpanSolver, CoordinatesReproduceVector) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  SpanSolver<Rational> s(5);
  std::vector<std::vector<Rational>> inserted;
  for (int k = 0; k < 4; ++k) {
    std::vector<Rational> v(5);
    for (auto& x : v) x = Rational(d(rng));
    inserted.push_back(v);
    s.insert(v);
  }
  std::vector<Rational> target(5);
  for (std::size_t k = 0; k < inserted.size(); ++k)
    for (std::size_t i = 0; i < 5; ++i) target[i] += Rational(static_cast<std::int64_t>(k + 1)) * inserted[k][i];
  auto c = s.coordinates(target);
  ASSERT_TRUE(c.has_value());
  std::vector<Rational> back(5);
  for (std::size_t k = 0; k < inserted.size(); ++k)
    for (std::size_t i = 0; i < 5; ++i) back[i] += (*c)[k] * inserted[k][i];
  EXPECT_EQ(back, target);
}

TEST(SpanSolver, DetectsDependence) {
  SpanSolver<GaussRational> s(2);
  EXPECT_TRUE(s.insert({GaussRational(1), GaussRational::i()}));
  EXPECT_FALSE(s.insert({GaussRational::i(), GaussRational(-1)}));
  EXPECT_EQ(s.dependent_indices(), std::vector<std::size_t>{1});
  EXPECT_FALSE(s.contains({GaussRational(1), GaussRational(1)}));
}

TEST(Matrix, KronAndAdjoint) {
  CMatrix a = CMatrix::unit(2, 0, 1);
  CMatrix b = CMatrix::identity(2);
  CMatrix k = kron(a, b);
  EXPECT_EQ(k.rows(), 4u);
  EXPECT_EQ(k(0, 2), GaussRational(1));
  EXPECT_EQ(k(1, 3), GaussRational(1));
  CMatrix z(1, 1);
  z(0, 0) = GaussRational(Rational(1), Rational(2));
  EXPECT_EQ(adjoint(z)(0, 0), GaussRational(Rational(1), Rational(-2)));
}
