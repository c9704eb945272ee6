/// @file test_obstruction.cpp
/// @brief Inert-prime anisotropy, the not-in-2I certificate, the four-torsion
///        replay and the Steinberg relations.

#include <gtest/gtest.h>

#include <random>

#include "wittcls/obstruction.hpp"

using namespace wittcls;

namespace {

Element random_nonzero(const Field& f, std::mt19937_64& rng, long h) {
  std::uniform_int_distribution<long> num(-h, h), den(1, h);
  for (;;) {
    Rat a(num(rng), f.is_finite() ? 1 : den(rng)), b(num(rng), f.is_finite() ? 1 : den(rng));
    a.canonicalize();
    b.canonicalize();
    Element x(f, a, f.has_root() ? b : Rat(0));
    if (!x.is_zero()) return x;
  }
}

std::vector<Element> ints(const Field& f, std::initializer_list<long> xs) {
  std::vector<Element> v;
  for (long x : xs) v.push_back(Element::integer(f, x));
  return v;
}

}  // namespace

TEST(InertAnisotropy, BinaryAndTernary) {
  Field k = Field::quadratic(-3);
  Int five(5);
  // residue field F_25: every element of F_5 is a square there
  EXPECT_EQ(local_anisotropy_at_inert_prime(ints(k, {1, 2}), five).verdict, LocalIsotropy::isotropic);
  EXPECT_EQ(local_anisotropy_at_inert_prime(ints(k, {1, 5}), five).verdict, LocalIsotropy::anisotropic);
  EXPECT_EQ(local_anisotropy_at_inert_prime(ints(k, {1, 5, 7}), five).verdict, LocalIsotropy::isotropic);
  auto r = local_anisotropy_at_inert_prime(ints(k, {25, 5, 3}), five);
  EXPECT_EQ(r.even_part.size(), 2u);
  EXPECT_EQ(r.odd_part.size(), 1u);
}

TEST(Not2I, InertPrimeChainForTwoPlusEps) {
  Field k = Field::quadratic(-3);
  Element eps(k, Rat(-1, 2), Rat(1, 2));
  Element s = Element::integer(k, 2) + eps;
  Int five(5);
  EXPECT_EQ(mult_order(reduce_at_inert_prime(-s, five)), Int(24));
  EXPECT_TRUE(is_square(reduce_at_inert_prime(-Element::one(k), five)));

  std::vector<Element> q = pfister2(s, Element::integer(k, 5)).diagonal();
  ASSERT_EQ(q.size(), 4u);
  auto cert = not_in_2I_certificate(q, five);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->q_verdict, LocalIsotropy::anisotropic);
  EXPECT_EQ(cert->q_prime_verdict, LocalIsotropy::anisotropic);
  EXPECT_FALSE(cert->inference.empty());
  // 2<<2+eps,5>> = 0 in W(K) although <<2+eps,5>> is not in 2I(K)
  WittExpression p = pfister2(s, Element::integer(k, 5));
  EXPECT_TRUE(witt_is_zero(2 * p).equal());
  EXPECT_TRUE(witt_is_zero(p).not_equal());
}

TEST(Not2I, NoCertificate) {
  Field k = Field::quadratic(-3);
  EXPECT_FALSE(not_in_2I_certificate(ints(k, {1, 1, 3, 3}), Int(5)).has_value());
  EXPECT_FALSE(not_in_2I_certificate(ints(k, {1, -1, 2, -2}), Int(5)).has_value());
  EXPECT_THROW(not_in_2I_certificate(ints(k, {1, 1, 3}), Int(5)), DomainError);
}

TEST(FourTorsion, ReplayExamples) {
  Field k = Field::quadratic(-3);
  Element eps(k, Rat(-1, 2), Rat(1, 2));
  for (const Element& a : {Element::one(k), eps, Element::integer(k, 7) - eps}) {
    FourTorsionTranscript t = replay_four_torsion(k, a);
    EXPECT_TRUE(t.valid()) << a;
    EXPECT_FALSE(t.x.is_zero());
    EXPECT_FALSE(t.y.is_zero());
    EXPECT_EQ(t.x * t.x + t.y * t.y, -Element::one(k));
    EXPECT_EQ(t.steps.size(), 5u);
  }
}

TEST(FourTorsion, ReplayRandom) {
  std::mt19937_64 rng(17);
  for (long d : {-2, -3, -5, -6}) {
    Field k = Field::quadratic(d);
    for (int i = 0; i < 20; ++i) {
      Element a = random_nonzero(k, rng, 12);
      EXPECT_TRUE(replay_four_torsion(k, a).valid()) << k << " " << a;
    }
  }
}

TEST(FourTorsion, RejectsOtherStufe) {
  EXPECT_THROW(replay_four_torsion(Field::rationals(), Element::one(Field::rationals())), DomainError);
  Field qi = Field::quadratic(-1);
  EXPECT_THROW(replay_four_torsion(qi, Element::one(qi)), DomainError);
}

TEST(Steinberg, Examples) {
  Field q = Field::rationals();
  auto c = verify_steinberg_relation(Element::integer(q, 2), Element::integer(q, 3), Element::integer(q, 5));
  EXPECT_TRUE(c.all());
  EXPECT_FALSE(c.unknown);
  auto one = verify_steinberg_relation(Element::one(q), Element::integer(q, 3), Element::integer(q, 5));
  EXPECT_TRUE(one.all());
}

TEST(Steinberg, RandomTriples) {
  std::mt19937_64 rng(23);
  for (const Field& f : {Field::rationals(), Field::quadratic(-3), Field::prime(11), Field::prime_square(3)}) {
    for (int i = 0; i < 25; ++i) {
      Element s = random_nonzero(f, rng, 9), t = random_nonzero(f, rng, 9), r = random_nonzero(f, rng, 9);
      auto c = verify_steinberg_relation(s, t, r);
      EXPECT_TRUE(c.all()) << f << " " << s << " " << t << " " << r;
    }
  }
}
