/// @file test_io.cpp
/// @brief Field, element, form and JSON formats.

#include <gtest/gtest.h>

#include "wittcls/io.hpp"

using namespace wittcls;

namespace {

std::size_t error_position(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no ParseError";
  return 0;
}

}  // namespace

TEST(ParseField, Grammar) {
  EXPECT_EQ(parse_field("Q"), Field::rationals());
  EXPECT_EQ(parse_field(" Q(i) "), Field::quadratic(-1));
  EXPECT_EQ(parse_field("Q(sqrt,-1)"), Field::quadratic(-1));
  EXPECT_EQ(parse_field("Q(sqrt, -3)"), Field::quadratic(-3));
  EXPECT_EQ(parse_field("Q(sqrt,2)"), Field::quadratic(2));
  EXPECT_EQ(parse_field("Fp(7)"), Field::prime(7));
  EXPECT_EQ(parse_field("Fp2(5)"), Field::prime_square(5));
  EXPECT_EQ(parse_field("Fp2(5,2)"), Field::prime_square(5, 0, -2));
  EXPECT_EQ(parse_field("Fp2(5,1,1)"), Field::prime_square(5, 1, 1));
}

TEST(ParseField, NamesRoundTrip) {
  for (const Field& f : {Field::rationals(), Field::quadratic(-1), Field::quadratic(-3), Field::quadratic(5),
                         Field::prime(11), Field::prime_square(5), Field::prime_square(7, 1, 3)})
    EXPECT_EQ(parse_field(f.name()), f) << f;
}

TEST(ParseField, ErrorsCarryPositions) {
  EXPECT_EQ(error_position([] { parse_field("R"); }), 0u);
  EXPECT_EQ(error_position([] { parse_field("Q(sqrt;2)"); }), 6u);
  EXPECT_EQ(error_position([] { parse_field("Fp(7"); }), 4u);
  EXPECT_EQ(error_position([] { parse_field("Q x"); }), 2u);
  EXPECT_THROW(parse_field("Q(sqrt,4)"), ParseError);
  EXPECT_THROW(parse_field("Fp(9)"), ParseError);
  EXPECT_THROW(parse_field("Fp(2)"), ParseError);
  EXPECT_THROW(parse_field("Fp2(5,1)"), ParseError);  // x^2 - 1 is reducible
  EXPECT_THROW(parse_field("Fp2(5,1,1,1)"), ParseError);
}

TEST(ParseElement, Grammar) {
  Field q = Field::rationals(), k = Field::quadratic(-3), f = Field::prime(7), g = Field::prime_square(5);
  EXPECT_EQ(parse_element(q, "-3/6"), Element(q, Rat(-1, 2)));
  EXPECT_EQ(parse_element(q, "+4"), Element::integer(q, 4));
  EXPECT_EQ(parse_element(k, "1/2+3/4*r"), Element(k, Rat(1, 2), Rat(3, 4)));
  EXPECT_EQ(parse_element(k, "-r"), Element(k, 0, -1));
  EXPECT_EQ(parse_element(k, " -1/2 - 1/2*r "), Element(k, Rat(-1, 2), Rat(-1, 2)));
  EXPECT_EQ(parse_element(k, "r+1+r"), Element(k, 1, 2));
  EXPECT_EQ(parse_element(f, "10"), Element::integer(f, 3));
  EXPECT_EQ(parse_element(f, "1/2"), Element::integer(f, 4));
  EXPECT_EQ(parse_element(g, "2+3*r"), Element(g, 2, 3));
}

TEST(ParseElement, ToStringRoundTrips) {
  for (const Field& f : {Field::rationals(), Field::quadratic(-3), Field::prime(7), Field::prime_square(5)}) {
    Rng rng = substream(5, 0);
    for (int i = 0; i < 50; ++i) {
      Element x = random_element(f, rng, 30);
      EXPECT_EQ(parse_element(f, x.to_string()), x) << x;
    }
  }
}

TEST(ParseElement, Errors) {
  Field q = Field::rationals(), k = Field::quadratic(-3);
  EXPECT_EQ(error_position([&] { parse_element(q, "r"); }), 0u);
  EXPECT_EQ(error_position([&] { parse_element(q, "1+r"); }), 2u);
  EXPECT_EQ(error_position([&] { parse_element(k, "1/0"); }), 0u);
  EXPECT_EQ(error_position([&] { parse_element(k, "1+-2"); }), 2u);
  EXPECT_EQ(error_position([&] { parse_element(k, "--2"); }), 1u);
  EXPECT_EQ(error_position([&] { parse_element(k, "2*x"); }), 2u);
  EXPECT_EQ(error_position([&] { parse_element(k, "2 3"); }), 2u);
  EXPECT_THROW(parse_element(Field::prime(7), "1/7"), ParseError);
  EXPECT_THROW(parse_element(q, ""), ParseError);
}

TEST(ParseForm, Grammar) {
  Field q = Field::rationals();
  std::vector<Element> v = parse_form(q, "<1,-2,-3,6>");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[3], Element::integer(q, 6));
  EXPECT_TRUE(parse_form(q, "<>").empty());
  EXPECT_EQ(format_form(v), "<1,-2,-3,6>");
  EXPECT_EQ(error_position([&] { parse_form(q, "<1,0>"); }), 3u);
  EXPECT_EQ(error_position([&] { parse_form(q, "<1,2"); }), 4u);
  EXPECT_EQ(error_position([&] { parse_form(q, "1,2>"); }), 0u);
}

TEST(ParseWitt, SignedSums) {
  Field q = Field::rationals();
  WittExpression e = parse_witt(q, "2<1,1> - <3> + 3*<-1>");
  EXPECT_TRUE(witt_equal(e, WittExpression::form(q, {1, 1, 1, 1, -3, -1, -1, -1})).equal());
  EXPECT_TRUE(witt_is_zero(parse_witt(q, "<1,-1>")).equal());
  EXPECT_TRUE(parse_witt(q, "<>").is_trivially_zero());
  EXPECT_THROW(parse_witt(q, "<1> <2>"), ParseError);
  EXPECT_THROW(parse_witt(q, ""), ParseError);
}

TEST(Json, MatrixRoundTrip) {
  Field k = Field::quadratic(-3);
  Rng rng = substream(6, 0);
  for (int i = 0; i < 20; ++i) {
    Mat2 m = random_sl2(k, rng);
    Json j = to_json(m);
    EXPECT_EQ(j["field"], "Q(sqrt,-3)");
    EXPECT_EQ(matrix_from_json(Json::parse(j.dump())), m);
  }
  Json bare = Json::parse(R"([[1, "1/2"], [0, 1]])");
  EXPECT_EQ(matrix_from_json(bare, Field::rationals()), x_mat(Element(Field::rationals(), Rat(1, 2))));
  EXPECT_THROW(matrix_from_json(bare), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"field":"Q","entries":[[1,2,3],[0,1]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"field":"Q","entries":[[1,2.5],[0,1]]})")), ParseError);
}

TEST(Json, SurfaceRepRoundTripAndPaths) {
  Field k = Field::quadratic(-3);
  AntiCommutingPair p = build_anticommuting_pair(k, Element::integer(k, 5));
  SurfaceRep r{1, GroupType::psl2, {p.a, p.b}};
  Json j = to_json(r);
  SurfaceRep back = surface_rep_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.genus, 1);
  EXPECT_EQ(back.group, GroupType::psl2);
  EXPECT_EQ(back.monodromies, r.monodromies);

  Json bad = j;
  bad["monodromies"][1][0][1] = "1+q";
  try {
    surface_rep_from_json(bad);
    ADD_FAILURE();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.path(), "/monodromies/1/0/1");
    EXPECT_EQ(e.position(), 2u);
  }
  bad = j;
  bad["monodromies"][0] = Json::parse(R"([[1,1],[1,1]])");
  EXPECT_THROW(surface_rep_from_json(bad), ParseError);
  bad = j;
  bad["genus"] = 2;
  EXPECT_THROW(surface_rep_from_json(bad), ParseError);
  bad = j;
  bad["group"] = "GL2";
  EXPECT_THROW(surface_rep_from_json(bad), ParseError);
  bad = j;
  bad.erase("field");
  EXPECT_THROW(surface_rep_from_json(bad), ParseError);
}

TEST(Json, WittExpression) {
  Field q = Field::rationals();
  Json j = to_json(WittExpression::form(q, {1, 1, -3}));
  EXPECT_EQ(j["field"], "Q");
  EXPECT_EQ(j["terms"].size(), 2u);
}
