/// @file test_fields.cpp
/// @brief Exact field arithmetic, square classes, positivity, Stufe and
///        inert-prime residue machinery.

#include <gtest/gtest.h>

#include <random>

#include "wittcls/field.hpp"

using namespace wittcls;

namespace {

Field q() { return Field::rationals(); }
Field qm3() { return Field::quadratic(-3); }
Element eps() { return Element(qm3(), Rat(-1, 2), Rat(1, 2)); }

/// Small random element with coordinates of height <= h.
Element random_element(const Field& f, std::mt19937_64& rng, long h = 12) {
  std::uniform_int_distribution<long> num(-h, h), den(1, h);
  auto coord = [&] { return f.is_finite() ? Rat(num(rng)) : Rat(num(rng), den(rng)); };
  Rat a = coord();
  Rat b = f.has_root() ? coord() : Rat(0);
  return Element(f, a, b);
}

std::vector<Field> sample_fields() {
  return {Field::rationals(), Field::quadratic(-1), Field::quadratic(-3), Field::quadratic(5),
          Field::quadratic(-7), Field::prime(5), Field::prime(7), Field::prime_square(5),
          Field::prime_square(7)};
}

}  // namespace

TEST(FieldArith, CubeRootOfUnity) {
  Element e = eps();
  EXPECT_EQ(e * e * e, Element::one(qm3()));
  EXPECT_NE(e, Element::one(qm3()));
}

TEST(FieldArith, RationalSum) { EXPECT_EQ(Element(q(), Rat(2, 3)) + Element(q(), Rat(1, 3)), Element::one(q())); }

TEST(FieldArith, InverseModFive) {
  Field f5 = Field::prime(5);
  EXPECT_EQ(Element::integer(f5, 2).inverse(), Element::integer(f5, 3));
}

TEST(FieldArith, Errors) {
  EXPECT_THROW(Element::zero(q()).inverse(), DivisionByZero);
  EXPECT_THROW(Element::one(q()) + Element::one(qm3()), FieldMismatch);
  EXPECT_THROW(Field::quadratic(4), DomainError);
  EXPECT_THROW(Field::quadratic(1), DomainError);
  EXPECT_THROW(Field::prime(9), DomainError);
  EXPECT_THROW(Field::prime_square(5, 0, -1), DomainError);  // x^2 - 1 splits
}

TEST(FieldArith, RandomFieldAxioms) {
  std::mt19937_64 rng(11);
  for (const Field& f : sample_fields()) {
    for (int i = 0; i < 200; ++i) {
      Element x = random_element(f, rng), y = random_element(f, rng), z = random_element(f, rng);
      EXPECT_EQ((x + y) * z, x * z + y * z);
      EXPECT_EQ((x * y) * z, x * (y * z));
      if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), Element::one(f));
      if (!y.is_zero()) EXPECT_EQ((x / y) * y, x);
    }
  }
}

TEST(IsSquare, Examples) {
  EXPECT_TRUE(is_square(Element(q(), Rat(4, 9))));
  EXPECT_FALSE(is_square(Element::integer(Field::prime(5), 2)));
  EXPECT_TRUE(is_square(-Element::one(Field::quadratic(-1))));
  EXPECT_FALSE(is_square(-Element::one(qm3())));
  EXPECT_TRUE(is_square(Element::zero(q())));
  EXPECT_FALSE(is_square(Element::integer(q(), -4)));
  // -3 = (sqrt -3)^2
  EXPECT_TRUE(is_square(Element::integer(qm3(), -3)));
  EXPECT_TRUE(is_square(eps()));  // eps = (eps^2)^2
}

TEST(IsSquare, SquaresOfRandomElements) {
  std::mt19937_64 rng(5);
  for (const Field& f : sample_fields()) {
    for (int i = 0; i < 150; ++i) {
      Element x = random_element(f, rng);
      Element y = random_element(f, rng);
      EXPECT_TRUE(is_square(x * x)) << f << " " << x;
      auto r = sqrt(x * x);
      ASSERT_TRUE(r.has_value());
      EXPECT_EQ(*r * *r, x * x);
      if (!y.is_zero()) EXPECT_EQ(is_square(x), is_square(x * y * y)) << f << " " << x;
    }
  }
}

TEST(IsSquare, FiniteFieldCountsHalf) {
  for (const Field& f : {Field::prime(11), Field::prime_square(3), Field::prime_square(7, 1, 3)}) {
    long squares = 0, total = 0;
    long p = static_cast<long>(f.p());
    long second = f.kind() == FieldKind::prime_square ? p : 1;
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < second; ++b) {
        Element x(f, Rat(a), Rat(b));
        if (x.is_zero()) continue;
        ++total;
        squares += is_square(x) ? 1 : 0;
      }
    EXPECT_EQ(2 * squares, total) << f;
  }
}

TEST(Positivity, Examples) {
  EXPECT_FALSE(positive(Element(q(), Rat(-3, 2))));
  EXPECT_TRUE(positive(Element::root(qm3())));
  EXPECT_FALSE(positive(Element::integer(Field::prime(7), 5)));
  EXPECT_THROW(positive(Element::zero(q())), DomainError);
}

TEST(Positivity, ExactlyOneOfXAndMinusX) {
  std::mt19937_64 rng(3);
  for (const Field& f : sample_fields()) {
    for (int i = 0; i < 100; ++i) {
      Element x = random_element(f, rng);
      if (x.is_zero()) continue;
      for (Positivity pc : {Positivity::standard(), Positivity::reversed()}) {
        EXPECT_NE(pc(x), pc(-x));
      }
      if (x.is_one() || (-x).is_one()) {
        EXPECT_EQ(Positivity::standard()(x), Positivity::reversed()(x));
      } else {
        EXPECT_NE(Positivity::standard()(x), Positivity::reversed()(x));
      }
    }
  }
}

TEST(Stufe, Table) {
  EXPECT_EQ(stufe(q()), Stufe::infinite);
  EXPECT_EQ(stufe(Field::quadratic(2)), Stufe::infinite);
  EXPECT_EQ(stufe(Field::quadratic(-1)), Stufe::one);
  EXPECT_EQ(stufe(Field::quadratic(-2)), Stufe::two);
  EXPECT_EQ(stufe(qm3()), Stufe::two);
  EXPECT_EQ(stufe(Field::prime(5)), Stufe::one);
  EXPECT_EQ(stufe(Field::prime(7)), Stufe::two);
  EXPECT_EQ(stufe(Field::prime_square(7)), Stufe::one);
}

TEST(Stufe, SearchFindsImaginaryWitnesses) {
  // -5: -1 = 2^2 + 5 * 1^2 ... needs -5 * 1 = -5 so 2^2 + (sqrt -5)^2 = -1.
  EXPECT_EQ(stufe(Field::quadratic(-5)), Stufe::two);
  // -7: -1 is a sum of two squares only via mixed shapes; stufe is 4 there.
  EXPECT_EQ(stufe(Field::quadratic(-7), 10), Stufe::unknown_gt2);
}

TEST(Stufe, WitnessesVerify) {
  auto w = two_square_witness(qm3());
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->gamma, eps());
  EXPECT_EQ(w->delta, eps() * eps());

  auto wi = two_square_witness(Field::quadratic(-1));
  ASSERT_TRUE(wi.has_value());
  EXPECT_EQ(wi->gamma, Element::root(Field::quadratic(-1)));
  EXPECT_TRUE(wi->delta.is_zero());

  auto w5 = two_square_witness(Field::prime(5));
  ASSERT_TRUE(w5.has_value());
  EXPECT_EQ(w5->gamma, Element::integer(Field::prime(5), 2));
  EXPECT_TRUE(w5->delta.is_zero());

  EXPECT_FALSE(two_square_witness(q()).has_value());

  for (const Field& f : {Field::quadratic(-1), Field::quadratic(-2), qm3(), Field::quadratic(-5), Field::prime(7), Field::prime(13), Field::prime_square(3)}) {
    auto nz = two_square_witness(f, WitnessPreference::nonzero_product);
    ASSERT_TRUE(nz.has_value()) << f;
    EXPECT_EQ(nz->gamma * nz->gamma + nz->delta * nz->delta, -Element::one(f)) << f;
    EXPECT_FALSE(nz->gamma.is_zero() || nz->delta.is_zero()) << f;
  }
  // F_5 has no such witness: -1 - 1 and -1 - 4 are not nonzero squares.
  auto n5 = two_square_witness(Field::prime(5), WitnessPreference::nonzero_product);
  EXPECT_TRUE(n5->delta.is_zero());
  auto nzi = two_square_witness(Field::quadratic(-1), WitnessPreference::nonzero_product);
  Field qi = Field::quadratic(-1);
  EXPECT_EQ(nzi->gamma, Element(qi, Rat(3, 4)));
  EXPECT_EQ(nzi->delta, Element(qi, 0, Rat(-5, 4)));
}

TEST(InertPrime, Valuation) {
  Int five(5);
  Element x = 10 * Element::one(qm3()) + 5 * eps();
  EXPECT_EQ(valuation_at_inert_prime(x, five), 1);
  EXPECT_EQ(valuation_at_inert_prime(Element::one(qm3()), five), 0);
  EXPECT_EQ(valuation_at_inert_prime(Element::integer(qm3(), 25), five), 2);
  EXPECT_EQ(valuation_at_inert_prime(Element(qm3(), Rat(1, 125)), five), -3);
  EXPECT_THROW(valuation_at_inert_prime(Element::one(qm3()), Int(7)), DomainError);  // 7 splits
  EXPECT_THROW(valuation_at_inert_prime(Element::one(qm3()), Int(3)), DomainError);  // ramified
  EXPECT_THROW(valuation_at_inert_prime(Element::zero(qm3()), five), DomainError);
}

TEST(InertPrime, Reduction) {
  Int five(5);
  Field f25 = residue_field_at_inert_prime(qm3(), five);
  Element e25 = reduce_at_inert_prime(eps(), five);
  EXPECT_EQ(e25 * e25 + e25 + Element::one(f25), Element::zero(f25));
  EXPECT_EQ(reduce_at_inert_prime(2 * Element::one(qm3()) + eps(), five), 2 * Element::one(f25) + e25);
  EXPECT_EQ(reduce_at_inert_prime(Element::integer(qm3(), 7), five), Element::integer(f25, 2));
  EXPECT_EQ(reduce_at_inert_prime(Element(qm3(), Rat(1, 6)), five), Element::one(f25));
  EXPECT_THROW(reduce_at_inert_prime(Element::integer(qm3(), 5), five), DomainError);
}

TEST(InertPrime, ValuationAdditiveAndReductionMultiplicative) {
  std::mt19937_64 rng(17);
  Int p(5);
  for (int i = 0; i < 300; ++i) {
    Element x = random_element(qm3(), rng, 30), y = random_element(qm3(), rng, 30);
    if (x.is_zero() || y.is_zero()) continue;
    int vx = valuation_at_inert_prime(x, p), vy = valuation_at_inert_prime(y, p);
    EXPECT_EQ(valuation_at_inert_prime(x * y, p), vx + vy);
    if (vx == 0 && vy == 0) {
      EXPECT_EQ(reduce_at_inert_prime(x * y, p), reduce_at_inert_prime(x, p) * reduce_at_inert_prime(y, p));
    }
  }
}

TEST(MultOrder, Examples) {
  Int five(5);
  Element g = reduce_at_inert_prime(-(2 * Element::one(qm3()) + eps()), five);
  EXPECT_EQ(mult_order(g), 24);
  Field f5 = Field::prime(5);
  EXPECT_EQ(mult_order(Element::one(f5)), 1);
  EXPECT_EQ(mult_order(Element::integer(f5, 2)), 4);
  EXPECT_THROW(mult_order(Element::zero(f5)), DomainError);
}

TEST(MultOrder, DividesGroupOrder) {
  std::mt19937_64 rng(23);
  for (const Field& f : {Field::prime(101), Field::prime_square(11), Field::prime_square(13)}) {
    Int q1 = f.order() - 1;
    for (int i = 0; i < 50; ++i) {
      Element x = random_element(f, rng, 200);
      if (x.is_zero()) continue;
      Int n = mult_order(x);
      EXPECT_EQ(q1 % n, 0);
      EXPECT_TRUE(x.pow(n).is_one());
    }
  }
}
