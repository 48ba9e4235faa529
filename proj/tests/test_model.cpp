#include <random>

#include <gtest/gtest.h>

#include "diophant/diophant.hpp"
#include "golden.hpp"

using namespace diophant;

namespace {

ErrorKind parse_error(std::string_view text, std::size_t* position = nullptr) {
  try {
    (void)parse_model(text);
  } catch (const Error& err) {
    if (position) *position = err.position();
    return err.kind();
  }
  ADD_FAILURE() << "no error for '" << text << "'";
  return ErrorKind::invalid_argument;
}

ErrorKind eval_error(std::string_view text, std::vector<BigInt> params) {
  try {
    (void)evaluate(parse_model(text), params, 128);
  } catch (const Error& err) {
    return err.kind();
  }
  ADD_FAILURE() << "no error for '" << text << "'";
  return ErrorKind::invalid_argument;
}

// Random expression text over a1..a_arity using every parameter at least once.
std::string random_expr(std::mt19937_64& rng, int depth, int arity, int& next) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int k = depth <= 0 ? 0 : pick(rng);
  if (k <= 2) {
    const int idx = next <= arity ? next++ : 1 + static_cast<int>(rng() % arity);
    return "a" + std::to_string(idx);
  }
  if (k == 3) return std::to_string(1 + rng() % 9);
  if (k == 4) return "sqrt(" + random_expr(rng, depth - 1, arity, next) + ")";
  if (k == 5) return "-(" + random_expr(rng, depth - 1, arity, next) + ")";
  static const char* ops[] = {"+", "-", "*", "/"};
  const std::string lhs = random_expr(rng, depth - 1, arity, next);
  const std::string rhs = random_expr(rng, depth - 1, arity, next);
  return "(" + lhs + ")" + ops[k - 6] + "(" + rhs + ")";
}

}  // namespace

TEST(Parse, ExampleModels) {
  EXPECT_EQ(parse_model("a1/a2").arity(), 2u);
  EXPECT_EQ(parse_model("a1 + a2*sqrt(2)").arity(), 2u);
  EXPECT_EQ(parse_model("a1/(a2 + a3*log2 + a4*log3)").arity(), 4u);
  EXPECT_EQ(parse_model("root(3, a1)").arity(), 1u);
}

TEST(Parse, AllFixtureModels) {
  for (const auto& row : golden::rows()) {
    const Model m = parse_model(row.model);
    EXPECT_EQ(m.arity(), row.params.size()) << row.label;
  }
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  std::size_t pos = Error::npos;
  EXPECT_EQ(parse_error("a1 + * a2", &pos), ErrorKind::syntax);
  EXPECT_EQ(pos, 5u);
  EXPECT_EQ(parse_error("sqrt(a1"), ErrorKind::syntax);
  EXPECT_EQ(parse_error("a1 $ a2"), ErrorKind::syntax);
  EXPECT_EQ(parse_error("a0"), ErrorKind::syntax);
  EXPECT_EQ(parse_error(""), ErrorKind::syntax);
  EXPECT_EQ(parse_error("foo(a1)"), ErrorKind::syntax);
}

TEST(Parse, ParameterGap) {
  EXPECT_EQ(parse_error("a1 + a3"), ErrorKind::parameter_gap);
  EXPECT_EQ(parse_error("2 + 3"), ErrorKind::parameter_gap);
}

TEST(Parse, LiteralZeroDivisor) {
  EXPECT_EQ(parse_error("a1/0"), ErrorKind::zero_divisor);
}

TEST(Format, Examples) {
  EXPECT_EQ(format_model(parse_model("a1 /a2")), "a1/a2");
  EXPECT_EQ(format_model(parse_model("sqrt(sqrt(a2))*a1")), "a1*sqrt(sqrt(a2))");
  EXPECT_EQ(format_model(parse_model("root(2, a1)")), "sqrt(a1)");
  EXPECT_EQ(format_model(parse_model("a1 - (a2 - a3)")), "a1-(a2-a3)");
  EXPECT_EQ(format_model(parse_model("(a1 - a2) - a3")), "a1-a2-a3");
}

TEST(Format, CommutativeOrderIsCanonical) {
  EXPECT_EQ(parse_model("a2*a1+a3"), parse_model("a3+a1*a2"));
  EXPECT_FALSE(parse_model("a1/a2") == parse_model("a2/a1"));
}

TEST(Format, RoundTripOnFixtures) {
  for (const auto& row : golden::rows()) {
    const Model m = parse_model(row.model);
    const std::string text = format_model(m);
    const Model again = parse_model(text);
    EXPECT_EQ(format_model(again), text) << row.label;
    EXPECT_TRUE(again == m) << row.label;
  }
}

TEST(Format, RoundTripOnRandomExpressions) {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 500; ++i) {
    const int arity = 1 + static_cast<int>(rng() % 4);
    int next = 1;
    std::string text = random_expr(rng, 4, arity, next);
    while (next <= arity) text = "(" + text + ")+a" + std::to_string(next++);
    const Model m = parse_model(text);
    const std::string canon = format_model(m);
    EXPECT_EQ(format_model(parse_model(canon)), canon) << text;
    EXPECT_TRUE(parse_model(canon) == m) << text;
  }
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(parse_model("a1/a2"), std::vector<BigInt>{22, 7}, 128).to_fixed(12), "3.142857142857");
  EXPECT_EQ(evaluate(parse_model("sqrt(a1)+sqrt(a2)"), std::vector<BigInt>{2, 3}, 128).to_fixed(5), "3.14626");
  const BigReal v = evaluate(parse_model("a1 - (1/a2)*sqrt(a3/a4)"), std::vector<BigInt>{3, 3, 5, 7}, 128);
  EXPECT_EQ(v.to_fixed(9), "2.718281915");
  const BigReal err = abs(v - constant("e", 128));
  EXPECT_LT(err.to_double(), 8.7e-8);
}

TEST(Evaluate, ResultPrecisionAndStability) {
  const Model m = parse_model("a1+a2/(sqrt(a3)-a4)");
  const std::vector<BigInt> a{3, 1, 65, 1};
  const BigReal lo = evaluate(m, a, 128), hi = evaluate(m, a, 512);
  EXPECT_EQ(lo.precision(), 128);
  EXPECT_EQ(compare(lo, hi.rounded(128)), 0);
}

TEST(Evaluate, Errors) {
  EXPECT_EQ(eval_error("a1/(a2-a3)", {1, 2, 2}), ErrorKind::eval_singular);
  EXPECT_EQ(eval_error("sqrt(a1-a2)", {1, 2}), ErrorKind::domain_error);
  EXPECT_EQ(eval_error("a1/a2", {1, 0}), ErrorKind::invalid_parameter);
  EXPECT_EQ(eval_error("a1/a2", {1, 2, 3}), ErrorKind::invalid_argument);
}

TEST(Evaluate, OddRootOfNegative) {
  const BigReal v = evaluate(parse_model("root(3, a1)"), std::vector<BigInt>{-8}, 128);
  EXPECT_EQ(compare(v, BigReal(-2, 128)), 0);
  EXPECT_EQ(eval_error("root(4, a1)", {-16}), ErrorKind::domain_error);
}
