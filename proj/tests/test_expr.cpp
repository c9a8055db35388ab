#include "doctest.h"

#include <random>

#include "cohen/expr.hpp"
#include "cohen/expr_random.hpp"

using namespace cohen::words;
using cohen::BigInt;

TEST_CASE("parsing the grammar") {
  auto e = parse("x1 x2", 2);
  CHECK(e->kind == Expr::Kind::Product);
  REQUIRE(e->children.size() == 2);
  CHECK(e->children[0]->gen == 1);
  CHECK(e->children[1]->gen == 2);

  auto engel_node = parse("[x4,_2 (x1 x2 x3)]", 4);
  CHECK(engel_node->kind == Expr::Kind::Engel);
  CHECK(engel_node->depth == 2);
  CHECK(engel_node->children[0]->gen == 4);
  CHECK(engel_node->children[1]->kind == Expr::Kind::Product);
  CHECK(engel_node->children[1]->children.size() == 3);

  auto pw = parse("[x1,x2]^-3", 2);
  CHECK(pw->kind == Expr::Kind::Power);
  CHECK(pw->exponent == BigInt(-3));
  CHECK(pw->children[0]->kind == Expr::Kind::Bracket);

  CHECK(parse("e", 1)->children.empty());
  CHECK(parse("x1^2400000000000000000000", 1)->exponent ==
        BigInt("2400000000000000000000"));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("x3", 2), parse_error);
  CHECK_THROWS_AS(parse("x1 [", 2), parse_error);
  CHECK_THROWS_AS(parse("", 2), parse_error);
  CHECK_THROWS_AS(parse("x1)", 2), parse_error);
  try {
    parse("x1 x9", 3);
    FAIL("expected a parse error");
  } catch (const parse_error& ex) {
    CHECK(ex.position == 4);
  }
}

TEST_CASE("printing canonical syntax") {
  CHECK(print(make_identity()) == "e");
  CHECK(print(make_bracket(make_generator(1), make_generator(2))) == "[x1,x2]");
  CHECK(print(make_power(make_generator(3), BigInt(-2))) == "x3^-2");
  CHECK(print(make_engel(make_generator(4), make_generator(1), 2)) == "[x4,_2 x1]");
  // inverse has no grammar token of its own
  CHECK(print(make_inverse(make_generator(1))) == "x1^-1");
  // nested powers need the parenthesized atom
  auto p = make_power(make_power(make_generator(1), BigInt(2)), BigInt(3));
  CHECK(print(p) == "(x1^2)^3");
  CHECK(structurally_equal(parse(print(p), 1), p));
}

TEST_CASE("round trip on random printable trees") {
  std::mt19937_64 rng(2024);
  RandomExprOptions opt;
  opt.n = 4;
  opt.max_depth = 4;
  opt.printable = true;
  for (int t = 0; t < 500; ++t) {
    auto e = random_expr(rng, opt);
    auto back = parse(print(e), 4);
    CHECK(structurally_equal(e, back));
  }
}

TEST_CASE("engel unfolding") {
  auto a = make_generator(1);
  auto b = make_generator(2);
  CHECK(structurally_equal(engel(a, b, 1), make_bracket(a, b)));
  CHECK(structurally_equal(
      engel(a, b, 3),
      make_bracket(make_bracket(make_bracket(a, b), b), b)));
  CHECK(structurally_equal(engel(a, b, 2), parse("[[x1,x2],x2]", 2)));
  CHECK_THROWS_AS(engel(a, b, 0), std::invalid_argument);

  // depth-k unfolding appends exactly k copies of the second argument
  for (int k = 1; k <= 6; ++k) {
    auto e = engel(a, b, k);
    int count = 0;
    const Expr* cur = e.get();
    while (cur->kind == Expr::Kind::Bracket) {
      CHECK(cur->children[1]->gen == 2);
      ++count;
      cur = cur->children[0].get();
    }
    CHECK(count == k);
    CHECK(cur->gen == 1);
  }
}

TEST_CASE("max_generator") {
  CHECK(max_generator(*parse("x1 [x3,x2]", 3)) == 3);
  CHECK(max_generator(*make_identity()) == 0);
}

TEST_CASE("the parser refuses garbage without misbehaving") {
  std::mt19937_64 rng(4096);
  const char alphabet[] = "x123,^[]() e_-+";
  for (int t = 0; t < 3000; ++t) {
    std::string s;
    std::size_t len = rng() % 40;
    for (std::size_t i = 0; i < len; ++i)
      s += alphabet[rng() % (sizeof(alphabet) - 1)];
    try {
      auto e = parse(s, 3);
      // accepted strings must round-trip through the canonical printer
      CHECK(structurally_equal(parse(print(e), 3), e));
    } catch (const parse_error&) {
      // expected for most inputs
    }
  }
}
