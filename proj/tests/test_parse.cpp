#include <gtest/gtest.h>

#include "oddsym/parse.hpp"
#include "oddsym/sampling.hpp"
#include "transitions.hpp"

using namespace oddsym;
using text::parse_expression;
using text::print;

namespace {

SuperFunction X(int i) { return SuperFunction::x(i); }
SuperFunction T(int i) { return SuperFunction::theta(i); }
SuperFunction C(long p, long q = 1) { return SuperFunction(Scalar::rational(p, q)); }

int error_column(const std::string& s) {
  try {
    parse_expression(s);
  } catch (const SyntaxError& e) {
    return e.column();
  }
  return -1;
}

}  // namespace

TEST(Parse, Examples) {
  EXPECT_EQ(parse_expression("x1*th1 + 2"), X(1) * T(1) + C(2));
  EXPECT_TRUE(parse_expression("th1*th1").is_zero());
  EXPECT_EQ(parse_expression("th2*th1"), -(T(1) * T(2)));
  EXPECT_EQ(parse_expression("1/2*x1^2 - x2/(x1 + 1)"),
            C(1, 2) * X(1) * X(1) - X(2) * invert(X(1) + C(1)));
  EXPECT_EQ(parse_expression("D(x1^3*th1, x1)"), C(3) * X(1) * X(1) * T(1));
  EXPECT_EQ(parse_expression("D(th1*th2, th2)"), -T(1));
  EXPECT_EQ(parse_expression("(1 + th1*th2)^-1"), C(1) - T(1) * T(2));
  EXPECT_EQ(parse_expression("I*I"), C(-1));
  EXPECT_EQ(parse_expression("hbar*pe1*po2*eps3*y2").to_string(), "pe1*hbar*y2*po2*eps3");
  EXPECT_EQ(parse_expression("x1", "U").chart(), "U");
}

TEST(Parse, Errors) {
  EXPECT_EQ(error_column("x1 +"), 5);
  EXPECT_EQ(error_column("x1 + * x2"), 6);
  EXPECT_EQ(error_column("2*(x1"), 6);
  EXPECT_EQ(error_column("x13"), 1);
  EXPECT_EQ(error_column("x1 + foo"), 6);
  EXPECT_EQ(error_column("x1/th1"), 4);
  EXPECT_EQ(error_column(""), 1);
  try {
    parse_expression("x1 +\n  th1 $");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 7);
  }
  EXPECT_THROW(text::parse_even("th1", "rho"), ParityError);
}

TEST(Parse, PrintRoundTrip) {
  sampling::Random rng(1);
  std::vector<SuperFunction> samples = {
      SuperFunction(), C(-3, 7), X(1) * invert(X(2) * X(2) + C(1)) * T(1) - T(2),
      SuperFunction(Scalar::i()) * X(1) + C(1, 2) * T(1) * T(2),
      SuperFunction(Scalar(1) + Scalar::i()) * SuperFunction::eps(2) * SuperFunction::xi(1),
      SuperFunction(Scalar(GaussianRational(mpq_class(0), mpq_class(-2, 3)))) + SuperFunction::variable(Var::hbar()),
  };
  for (int k = 0; k < 100; ++k) samples.push_back(rng.function(3));
  for (int k = 0; k < 30; ++k) samples.push_back(invert(rng.even_invertible(2)) * rng.function(2));
  for (const auto& f : samples) {
    EXPECT_EQ(parse_expression(print(f)), f) << print(f);
    EXPECT_EQ(text::function_from_json(text::to_json(f)), f);
  }
}

TEST(Parse, TransitionsAndForms) {
  auto t = text::parse_transition("x1 -> 2*x1, th1 -> 1/2*th1", 1);
  EXPECT_EQ(berezinian(t), C(4));
  auto u = text::parse_transition("[\"x1\", \"x2 + D(x1^2, x1)*eps1*th1\", \"th1\", \"th2\"]", 2);
  EXPECT_EQ(u.images[1], X(2) + C(2) * X(1) * SuperFunction::eps(1) * T(1));
  auto v = text::parse_transition("th2 -> th2 + eps1", 2);
  EXPECT_EQ(v.images[0], X(1));
  EXPECT_EQ(v.images[3], T(2) + SuperFunction::eps(1));
  EXPECT_THROW(text::parse_transition("x3 -> x1", 2), SyntaxError);
  EXPECT_THROW(text::parse_transition("x1 -> th1", 1), ParityError);
  try {
    text::parse_transition("x1 -> 2*x1, th1 -> (th1", 1);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.column(), 24);
  }
  for (const auto& tr : fixtures::symplectic_transitions(2)) {
    auto back = text::transition_from_json(text::to_json(tr));
    EXPECT_EQ(back.images, tr.images);
  }
  auto w = text::parse_form("x1*xi1*xi2 + 3", 2);
  EXPECT_EQ(w.top_coefficient(), X(1));
  EXPECT_EQ(text::form_from_json(text::to_json(w)), w);
  EXPECT_THROW(text::parse_form("th1", 1), DomainError);
}
