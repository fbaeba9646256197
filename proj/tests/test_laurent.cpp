#include <gtest/gtest.h>

#include <random>

#include "wslice/dual.hpp"
#include "wslice/laurent.hpp"

using namespace wslice;

namespace {

VarsPtr xyt() { return make_vars({"x", "y", "t"}, {"t"}); }

}  // namespace

TEST(Laurent, ParseAndPrint) {
  auto v = xyt();
  auto p = parse_laurent(v, "2*x*y - (x + t^-1)^2 + 3/4");
  EXPECT_EQ(p.str(), "-x^2 + 2*x*y - 2*x*t^-1 + 3/4 - t^-2");
  EXPECT_EQ(parse_laurent(v, "x - x").str(), "0");
  EXPECT_TRUE(parse_laurent(v, "0").is_zero_poly());
  EXPECT_EQ(parse_laurent(v, "-x^2"), -(parse_laurent(v, "x") * parse_laurent(v, "x")));
}

TEST(Laurent, RejectsBadInput) {
  auto v = xyt();
  EXPECT_THROW(parse_laurent(v, "x^-1"), std::invalid_argument);
  EXPECT_THROW(parse_laurent(v, "q + 1"), std::invalid_argument);
  EXPECT_THROW(parse_laurent(v, "(x + t)^-1"), std::invalid_argument);
  EXPECT_THROW(parse_laurent(v, "x +"), std::invalid_argument);
  EXPECT_THROW(parse_laurent(v, "x y"), std::invalid_argument);
}

TEST(Laurent, RingAxiomsOnRandomElements) {
  auto v = xyt();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 2), et(-2, 2);
  auto rnd = [&] {
    LaurentPoly p(v);
    for (int k = 0; k < 4; ++k) p += LaurentPoly::monomial(v, {e(rng), e(rng), et(rng)}, Q(c(rng)));
    return p;
  };
  for (int trial = 0; trial < 20; ++trial) {
    auto a = rnd(), b = rnd(), d = rnd();
    EXPECT_EQ(a * (b + d), a * b + a * d);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_EQ(a * b, b * a);
    // Leibniz for the derivative
    for (int i = 0; i < 3; ++i) EXPECT_EQ((a * b).derivative(i), a.derivative(i) * b + a * b.derivative(i));
  }
}

TEST(Laurent, EvaluateAndSubstitute) {
  auto v = xyt();
  auto p = parse_laurent(v, "x*y^2 + t^-2");
  EXPECT_EQ(p.evaluate<Q>({Q(2), Q(3), Q(1, 2)}), Q(22));
  auto w = make_vars({"u"}, {"u"});
  auto u = LaurentPoly::variable(w, 0);
  auto q = p.substitute({u + LaurentPoly::constant(w, 1), u, u.pow(2)});
  EXPECT_EQ(q, parse_laurent(w, "u^3 + u^2 + u^-4"));
  EXPECT_THROW(p.substitute({u, u, u + LaurentPoly::constant(w, 1)}), std::invalid_argument);
}

TEST(Laurent, DualNumbersGiveExactDerivatives) {
  auto v = xyt();
  auto p = parse_laurent(v, "x^3*t^-1 + y*t^2");
  std::vector<Dual> pt = {Dual(Q(2), Q(1)), Dual(Q(5)), Dual(Q(3))};
  Dual val = p.evaluate<Dual>(pt);
  EXPECT_EQ(val.a, p.evaluate<Q>({Q(2), Q(5), Q(3)}));
  EXPECT_EQ(val.b, p.derivative(0).evaluate<Q>({Q(2), Q(5), Q(3)}));
  Dual tdir = p.evaluate<Dual>({Dual(Q(2)), Dual(Q(5)), Dual(Q(3), Q(1))});
  EXPECT_EQ(tdir.b, p.derivative(2).evaluate<Q>({Q(2), Q(5), Q(3)}));
}

TEST(Laurent, ExactDivision) {
  auto v = make_vars({"x", "y", "z"});
  auto a = parse_laurent(v, "6*z^3 - 6*z^2");
  auto q = divide_exact(a, parse_laurent(v, "z - 1"));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, parse_laurent(v, "6*z^2"));
  EXPECT_FALSE(divide_exact(parse_laurent(v, "x + 1"), parse_laurent(v, "z - 1")).has_value());
}
