/// @file test_witt.cpp
/// @brief Witt expressions, Pfister forms, signed determinant, ideal flags,
///        equality decisions, anisotropic dimension and norm.

#include <gtest/gtest.h>

#include <random>
#include <unordered_map>

#include "wittcls/campaigns.hpp"
#include "wittcls/witt_equal.hpp"

using namespace wittcls;

namespace {

Field Q() { return Field::rationals(); }
Field K3() { return Field::quadratic(-3); }
Element eps() { return Element(K3(), Rat(-1, 2), Rat(1, 2)); }
Element qe(long n) { return Element::integer(Q(), n); }

WittExpression random_rational_form(std::mt19937_64& rng, int max_dim, long h) {
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_int_distribution<long> entry(-h, h);
  std::vector<Element> e;
  int n = dim(rng);
  while (static_cast<int>(e.size()) < n) {
    long a = entry(rng);
    if (a != 0) e.push_back(qe(a));
  }
  return WittExpression::form(Q(), e);
}

WittExpression random_expression(const Field& f, std::mt19937_64& rng, int terms, long h) {
  std::uniform_int_distribution<long> num(-h, h), den(1, 3), mult(-2, 2);
  WittExpression q(f);
  for (int i = 0; i < terms; ++i) {
    Rat c0(num(rng), den(rng)), c1 = f.has_root() ? Rat(num(rng), den(rng)) : Rat(0);
    c0.canonicalize();
    c1.canonicalize();
    Element a(f, c0, c1);
    if (!a.is_zero()) q.add(a, mult(rng));
  }
  return q;
}

}  // namespace

TEST(Pfister, Examples) {
  Field f = Q();
  EXPECT_TRUE(witt_is_zero(pfister2(qe(1), qe(7))).equal());
  EXPECT_TRUE(witt_equal(pfister2(qe(-1), qe(-1)), 2 * WittExpression::h(f)).equal());
  WittExpression p = pfister2(qe(2), qe(3));
  EXPECT_TRUE(witt_equal(p, WittExpression::form(f, {1, -2, -3, 6})).equal());
  EXPECT_EQ(p.terms().size(), 4u);
  EXPECT_THROW(pfister2(qe(0), qe(3)), DomainError);
}

TEST(SignedDeterminant, Examples) {
  Field f = Q();
  EXPECT_EQ(signed_determinant(WittExpression::h(f)), qe(-1));
  EXPECT_EQ(signed_determinant(WittExpression(f)), qe(1));
  EXPECT_EQ(signed_determinant(pfister2(qe(2), qe(3))), qe(1));
  EXPECT_THROW(signed_determinant(-WittExpression::h(f)), DomainError);
}

TEST(SignedDeterminant, InvariantUnderHyperbolicPairs) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    WittExpression q = random_rational_form(rng, 5, 30);
    long a = 0;
    while (a == 0) a = std::uniform_int_distribution<long>(-30, 30)(rng);
    WittExpression r = q + WittExpression::form(Q(), {a, -a});
    EXPECT_EQ(signed_determinant(q), signed_determinant(r)) << q;
  }
}

TEST(IdealMembership, Examples) {
  Field f = Q();
  IdealMembership h = ideal_membership(WittExpression::h(f));
  EXPECT_TRUE(h.in_I);
  EXPECT_FALSE(h.in_I2);
  EXPECT_TRUE(h.in_I2_plus);
  EXPECT_TRUE(ideal_membership(pfister2(qe(5), qe(-7))).in_I2);
  EXPECT_FALSE(ideal_membership(WittExpression::rank_one(qe(1))).in_I);
  IdealMembership two = ideal_membership(WittExpression::form(f, {1, -2}));
  EXPECT_TRUE(two.in_I);
  EXPECT_FALSE(two.in_I2_plus);  // d = 2
}

TEST(IdealMembership, PfisterFormsAlwaysInI2) {
  std::mt19937_64 rng(8);
  for (const Field& f : {Q(), K3(), Field::quadratic(-1), Field::prime(7)}) {
    for (int i = 0; i < 100; ++i) {
      WittExpression r = random_expression(f, rng, 2, 9);
      if (r.terms().size() < 2) continue;
      WittExpression p = pfister2(r.terms()[0].coefficient, r.terms()[1].coefficient);
      EXPECT_TRUE(ideal_membership(p).in_I2) << p;
    }
  }
}

TEST(WittEqual, Examples) {
  Field f = Q();
  EXPECT_TRUE(witt_equal(WittExpression::form(f, {1, -1}), WittExpression(f)).equal());
  EXPECT_TRUE(witt_equal(WittExpression::form(f, {1, 1}), WittExpression::form(f, {2, 2})).equal());
  EXPECT_TRUE(witt_equal(WittExpression::form(f, {1}), WittExpression::form(f, {2})).not_equal());
  EXPECT_THROW(witt_equal(WittExpression(f), WittExpression(K3())), FieldMismatch);
}

TEST(WittEqual, FiniteFieldTable) {
  Field f5 = Field::prime(5), f7 = Field::prime(7);
  // -1 is a square in F_5, so <1,1> = 0; not in F_7.
  EXPECT_TRUE(witt_is_zero(WittExpression::h(f5)).equal());
  EXPECT_TRUE(witt_is_zero(WittExpression::h(f7)).not_equal());
  EXPECT_TRUE(witt_is_zero(2 * WittExpression::h(f7)).equal());
  EXPECT_TRUE(witt_is_zero(WittExpression::rank_one(Element::one(f7))).not_equal());
}

TEST(WittEqual, StufeTwoField) {
  Field k = K3();
  Element one = Element::one(k);
  EXPECT_TRUE(witt_is_zero(WittExpression::rank_one(one, 4)).equal());
  EXPECT_TRUE(witt_is_zero(WittExpression::h(k)).not_equal());
  Element a = Element::integer(k, 2) + eps();
  Element five = Element::integer(k, 5);
  EXPECT_TRUE(witt_is_zero(pfister2(a, five)).not_equal());
  EXPECT_TRUE(witt_is_zero(2 * pfister2(a, five)).equal());
  // 4<a> = 0 for every a (stufe 2).
  EXPECT_TRUE(witt_is_zero(WittExpression::rank_one(a, 4)).equal());
  // eta = 1: <1,1> - 2<1> + 2<eta> = 2<eta>.
  Element eta = Element(k, Rat(3, 7), Rat(-2, 5));
  WittExpression lhs = WittExpression::h(k) - WittExpression::rank_one(one, 2) + WittExpression::rank_one(eta, 2);
  EXPECT_TRUE(witt_equal(lhs, WittExpression::rank_one(eta, 2)).equal());
}

TEST(WittEqual, StufeOneField) {
  Field k = Field::quadratic(-1);
  Element eta(k, Rat(2), Rat(5));
  EXPECT_TRUE(witt_is_zero(pfister2(eta, eta)).equal());
  EXPECT_TRUE(witt_is_zero(WittExpression::h(k)).equal());
  EXPECT_TRUE(witt_is_zero(WittExpression::rank_one(eta, 2)).equal());
  EXPECT_TRUE(witt_is_zero(pfister2(Element::integer(k, 3), Element::integer(k, 7))).equal());
  // 5 splits; (2, 5) = (2/5) = -1 there.
  EXPECT_TRUE(witt_is_zero(pfister2(Element::integer(k, 2), Element::integer(k, 5))).not_equal());
}

TEST(WittEqual, EquivalenceProperties) {
  std::mt19937_64 rng(13);
  for (const Field& f : {Q(), K3(), Field::quadratic(-1), Field::quadratic(5), Field::prime(11)}) {
    for (int i = 0; i < 80; ++i) {
      WittExpression a = random_expression(f, rng, 3, 9), b = random_expression(f, rng, 3, 9);
      EXPECT_TRUE(witt_equal(a, a).equal());
      EXPECT_EQ(witt_equal(a, b).verdict, witt_equal(b, a).verdict) << a << " vs " << b;
      EXPECT_TRUE(witt_equal(a + b, b + a).equal());
    }
  }
}

/// The rewrite engine is an independent route; when it reaches a verdict the
/// local-global decision agrees.
TEST(WittEqual, RewriteEngineAgreesWithLocalGlobal) {
  std::mt19937_64 rng(21);
  EqualityOptions rw{EqualityMode::rewrite, 300};
  int decided = 0;
  for (const Field& f : {Q(), K3(), Field::quadratic(-1), Field::quadratic(2)}) {
    for (int i = 0; i < 60; ++i) {
      WittExpression a = random_expression(f, rng, 3, 5);
      EqualityVerdict lg = witt_is_zero(a, {EqualityMode::local_global});
      EqualityVerdict r = witt_is_zero(a, rw);
      if (!r.unknown()) {
        ++decided;
        EXPECT_EQ(r.verdict, lg.verdict) << f << " " << a;
      }
    }
  }
  EXPECT_GT(decided, 80);
}

TEST(WittEqual, RewriteEngineProvesKnownIdentities) {
  Field k = K3();
  EqualityOptions rw{EqualityMode::rewrite, 10'000};
  EXPECT_TRUE(witt_is_zero(WittExpression::rank_one(Element::one(k), 4), rw).equal());
  EXPECT_TRUE(witt_equal(WittExpression::form(Q(), {1, 1}), WittExpression::form(Q(), {2, 2}), rw).equal());
  EXPECT_TRUE(witt_is_zero(WittExpression::h(k), rw).not_equal());
}

TEST(AnisotropicDimension, Examples) {
  Field f = Q();
  EXPECT_EQ(anisotropic_dimension(WittExpression::form(f, {1, -1})), 0);
  EXPECT_EQ(anisotropic_dimension(WittExpression::form(f, {1, 1, 1, 1})), 4);
  EXPECT_EQ(anisotropic_dimension(pfister2(qe(2), qe(3))), 4);
  EXPECT_EQ(witt_norm(WittExpression(f)), 0);
  EXPECT_EQ(witt_norm(WittExpression::h(f)), 2);
  EXPECT_EQ(witt_norm(pfister2(qe(2), qe(3))), 4);
  EXPECT_EQ(anisotropic_dimension(WittExpression::form(f, {1, 1, -1})), 1);
  EXPECT_EQ(anisotropic_dimension(WittExpression::form(f, {1, 1, 1})), 3);
  EXPECT_EQ(anisotropic_dimension(WittExpression::form(f, {1, 2, -3})), 1);  // 1 + 2 - 3 = 0
  EXPECT_EQ(anisotropic_dimension(WittExpression::form(f, {1, 1, -3})), 3);
  EXPECT_EQ(local_anisotropic_dimension(pfister2(qe(2), qe(3)), RationalPlace::prime(Int(3))), 4);
  EXPECT_THROW(anisotropic_dimension(WittExpression(K3())), DomainError);
}

TEST(AnisotropicDimension, ParityAndHyperbolicInvariance) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 400; ++i) {
    WittExpression q = random_rational_form(rng, 6, 40);
    long n = q.dimension();
    long ad = anisotropic_dimension(q);
    EXPECT_EQ((n - ad) % 2, 0) << q;
    EXPECT_LE(ad, n);
    EXPECT_GE(ad, 0);
    long a = 0;
    while (a == 0) a = std::uniform_int_distribution<long>(-40, 40)(rng);
    EXPECT_EQ(witt_norm(q + WittExpression::form(Q(), {a, -a})), witt_norm(q));
    EXPECT_EQ(witt_norm(q - q), 0);
    EXPECT_EQ(witt_is_zero(q).equal(), ad == 0);
  }
}

/// Isotropy verdicts agree with an explicit integer search (bound 200).
TEST(AnisotropicDimension, IsotropyAgreesWithIntegerSearch) {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<long> entry(-10, 10);
  for (int i = 0; i < 200; ++i) {
    std::vector<long> a;
    int n = dim(rng);
    while (static_cast<int>(a.size()) < n) {
      long x = entry(rng);
      if (x) a.push_back(x);
    }
    std::vector<Element> e;
    for (long x : a) e.push_back(qe(x));
    WittExpression q(Q());
    bool isotropic = false;
    // Build without merging so the full form is seen.
    long ad = anisotropic_dimension(WittExpression::form(Q(), e));
    isotropic = ad < n;
    EXPECT_EQ(integer_zero_exists(a, 200), isotropic) << ::testing::PrintToString(a);
  }
}
