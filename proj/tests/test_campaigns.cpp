/// @file test_campaigns.cpp
/// @brief Small runs of the sampled campaigns and the two oracles.

#include <gtest/gtest.h>

#include "wittcls/campaigns.hpp"

using namespace wittcls;

TEST(Campaigns, SteinbergOverQAndQuadratic) {
  CheckReport r = steinberg_scan(Field::rationals(), 100, 1);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.counts["cocycle_holds"], 100);
  EXPECT_TRUE(steinberg_scan(Field::quadratic(-3), 20, 2).pass());
  EXPECT_TRUE(steinberg_scan(Field::prime_square(5), 50, 3).pass());
}

TEST(Campaigns, CommutatorFormula) {
  CheckReport r = commutator_formula_scan(Field::quadratic(-3), 20, 4);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.samples, 60);
  EXPECT_TRUE(degenerate_commutator_scan(Field::quadratic(-1), 20, 5).pass());
  EXPECT_THROW(degenerate_commutator_scan(Field::quadratic(-3), 1, 5), DomainError);
}

TEST(Campaigns, TorusAndFourTorsion) {
  EXPECT_TRUE(torus_scan(Field::quadratic(-3), 10, 6).pass());
  EXPECT_TRUE(four_torsion_scan(Field::quadratic(-3), 5, 7).pass());
  EXPECT_THROW(four_torsion_scan(Field::rationals(), 1, 7), DomainError);
}

TEST(Campaigns, SigmaIndependence) {
  for (const Field& f : {Field::rationals(), Field::quadratic(-1), Field::prime(7)}) {
    CheckReport r = sigma_independence_scan(f, 15, 8);
    EXPECT_TRUE(r.pass()) << f;
  }
  EXPECT_THROW(sigma_independence_scan(Field::rationals(), 1, 8, CocycleKind::moore), DomainError);
}

TEST(Campaigns, InertPrimeDemo) {
  Remark44Demo d = remark44_demo();
  EXPECT_EQ(d.order, Int(24));
  EXPECT_TRUE(d.all());
  EXPECT_TRUE(d.twice_is_zero);
  EXPECT_TRUE(d.nonzero);
  EXPECT_EQ(d.q.size(), 4u);
}

TEST(Oracles, IntegerZeroSearch) {
  EXPECT_TRUE(integer_zero_exists({1, -1}, 3));
  EXPECT_TRUE(integer_zero_exists({1, 2, -3}, 3));
  EXPECT_FALSE(integer_zero_exists({1, 1, 1, 1}, 20));
  EXPECT_FALSE(integer_zero_exists({5}, 20));
  EXPECT_THROW(integer_zero_exists({1, 1, 1, 1, 1}, 2), DomainError);
}

TEST(Oracles, IsotropyAndDyadic) {
  CheckReport r = isotropy_oracle_scan(100, 9);
  EXPECT_TRUE(r.pass());
  EXPECT_GT(r.counts["isotropic"], 0);
  EXPECT_GT(r.counts["anisotropic"], 0);
  CheckReport d = dyadic_oracle_scan();
  EXPECT_EQ(d.samples, 64);
  EXPECT_TRUE(d.pass());
}
