#include "doctest.h"

#include <array>
#include <atomic>
#include <random>
#include <thread>

#include "cohen/collect.hpp"
#include "cohen/expr_random.hpp"

using namespace cohen;
using words::parse;

namespace {

ContextPtr z_ctx(int n) { return make_context(n, CoeffMode::integers()); }
ContextPtr mod_ctx(int n, std::uint32_t p = 3, std::uint32_t r = 2) {
  return make_context(n, CoeffMode::mod_prime_power(p, r));
}

// independent oracle for n = 2 over the integers: the group embeds in
// 3x3 unitriangular matrices
struct Uni3 {
  long long a = 0, b = 0, c = 0;  // [[1,a,c],[0,1,b],[0,0,1]]
  bool operator==(const Uni3&) const = default;
};

Uni3 uni_mul(const Uni3& x, const Uni3& y) {
  return {checked_add(x.a, y.a), checked_add(x.b, y.b),
          checked_add(checked_add(x.c, y.c), checked_mul(x.a, y.b))};
}

Uni3 uni_inv(const Uni3& x) { return {-x.a, -x.b, checked_mul(x.a, x.b) - x.c}; }

Uni3 uni_pow(Uni3 base, long long k) {
  if (k < 0) {
    base = uni_inv(base);
    k = -k;
  }
  Uni3 acc;
  while (k) {
    if (k & 1) acc = uni_mul(acc, base);
    base = uni_mul(base, base);
    k >>= 1;
  }
  return acc;
}

Uni3 uni_eval(const words::Expr& e) {
  using K = words::Expr::Kind;
  switch (e.kind) {
    case K::Generator:
      return e.gen == 1 ? Uni3{1, 0, 0} : Uni3{0, 1, 0};
    case K::Product: {
      Uni3 acc;
      for (const auto& c : e.children) acc = uni_mul(acc, uni_eval(*c));
      return acc;
    }
    case K::Inverse:
      return uni_inv(uni_eval(*e.children[0]));
    case K::Power:
      return uni_pow(uni_eval(*e.children[0]), e.exponent.to_int64());
    case K::Bracket: {
      Uni3 u = uni_eval(*e.children[0]), v = uni_eval(*e.children[1]);
      return uni_mul(uni_mul(uni_inv(u), uni_inv(v)), uni_mul(u, v));
    }
    case K::Engel: {
      Uni3 acc = uni_eval(*e.children[0]);
      Uni3 y = uni_eval(*e.children[1]);
      for (int i = 0; i < e.depth; ++i)
        acc = uni_mul(uni_mul(uni_inv(acc), uni_inv(y)), uni_mul(acc, y));
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

Uni3 uni_of_nf(const NormalForm& nf) {
  // basis order for n = 2: x1, x2, [x1,x2]
  Uni3 acc;
  for (const auto& [idx, e] : nf.coeffs) {
    Uni3 b = idx == 0 ? Uni3{1, 0, 0} : idx == 1 ? Uni3{0, 1, 0} : Uni3{0, 0, 1};
    acc = uni_mul(acc, uni_pow(b, e));
  }
  return acc;
}

}  // namespace

TEST_CASE("basis enumeration and sizes") {
  CHECK(z_ctx(1)->basis_size() == 1);
  CHECK(z_ctx(2)->basis_size() == 3);
  CHECK(z_ctx(3)->basis_size() == 8);
  CHECK(z_ctx(4)->basis_size() == 24);
  CHECK(z_ctx(5)->basis_size() == 89);

  auto ctx = z_ctx(3);
  // weight ascending, subset lex, tail-permutation lex
  std::vector<std::string> expected = {"x1",         "x2",         "x3",
                                       "[x1,x2]",    "[x1,x3]",    "[x2,x3]",
                                       "[x1,x2,x3]", "[x1,x3,x2]"};
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(ctx->basis_at(i).to_string() == expected[i]);

  // the closed form for the count
  for (int n = 1; n <= 5; ++n) {
    BigInt total(0);
    for (int k = 1; k <= n; ++k)
      total += binomial(n, k) * factorial(k - 1);
    CHECK(BigInt(static_cast<long long>(z_ctx(n)->basis_size())) == total);
  }
}

TEST_CASE("collect: relators vanish") {
  auto ctx = mod_ctx(3);
  CHECK(collect(parse("x1^9", 3), *ctx).is_identity());
  CHECK(collect(parse("[x1,x2,x1]", 3), *ctx).is_identity());
  CHECK(collect(parse("[x1,x2,x1]", 3), *z_ctx(3)).is_identity());
  CHECK(collect(parse("e", 3), *ctx).is_identity());
}

TEST_CASE("collect: the class-2 exchange") {
  auto ctx = z_ctx(2);
  NormalForm nf = collect(parse("x2 x1", 2), *ctx);
  NormalForm expected;
  expected.coeffs = {{0, 1}, {1, 1}, {2, -1}};
  CHECK(nf == expected);
  CHECK(print_normal_form(nf, *ctx) == "x1 x2 [x1,x2]^-1");
}

TEST_CASE("unitriangular matrix oracle at n = 2") {
  auto ctx = z_ctx(2);
  std::mt19937_64 rng(31);
  words::RandomExprOptions opt;
  opt.n = 2;
  opt.max_depth = 4;
  opt.max_abs_exp = 4;
  for (int t = 0; t < 300; ++t) {
    auto e = words::random_expr(rng, opt);
    NormalForm nf = collect(*e, *ctx);
    CHECK(uni_eval(*e) == uni_of_nf(nf));
  }
}

TEST_CASE("homomorphism properties") {
  std::mt19937_64 rng(37);
  for (int n = 1; n <= 4; ++n) {
    for (bool modular : {false, true}) {
      ContextPtr ctx = modular ? mod_ctx(n) : z_ctx(n);
      words::RandomExprOptions opt;
      opt.n = n;
      opt.max_depth = 4;
      opt.max_abs_exp = 4;
      int rounds = n <= 3 ? 40 : 15;
      for (int t = 0; t < rounds; ++t) {
        auto u = words::random_expr(rng, opt);
        auto v = words::random_expr(rng, opt);
        NormalForm cu = collect(*u, *ctx), cv = collect(*v, *ctx);
        CHECK(collect(*words::make_product({u, v}), *ctx) == multiply(cu, cv, *ctx));
        CHECK(collect(*words::make_inverse(u), *ctx) == inverse(cu, *ctx));
      }
    }
  }
}

TEST_CASE("collection route agrees with the representation route") {
  std::mt19937_64 rng(41);
  for (int n = 1; n <= 4; ++n) {
    for (bool modular : {false, true}) {
      ContextPtr ctx = modular ? mod_ctx(n) : z_ctx(n);
      words::RandomExprOptions opt;
      opt.n = n;
      opt.max_depth = 3;
      opt.max_abs_exp = 4;
      for (int t = 0; t < 25; ++t) {
        auto e = words::random_expr(rng, opt);
        CHECK(collect(*e, *ctx) == collect_via_representation(*e, *ctx));
      }
    }
  }
}

TEST_CASE("nilpotency: weight past the class collapses") {
  for (int n = 2; n <= 3; ++n) {
    auto ctx = mod_ctx(n);
    // all left-normalized generator brackets of weight n + 1
    std::vector<int> entries(n + 1, 1);
    for (;;) {
      auto expr = words::make_generator(entries[0]);
      words::ExprPtr acc = expr;
      for (int i = 1; i <= n; ++i)
        acc = words::make_bracket(acc, words::make_generator(entries[i]));
      CHECK(collect(*acc, *ctx).is_identity());
      int i = n;
      while (i >= 0 && entries[i] == n) entries[i--] = 1;
      if (i < 0) break;
      ++entries[i];
    }
  }
}

TEST_CASE("distinct-entry reduction: repeats vanish, weight <= 4") {
  auto ctx = mod_ctx(3);
  for (int w = 2; w <= 4; ++w) {
    std::vector<int> entries(w, 1);
    for (;;) {
      bool repeat = false;
      for (int i = 0; i < w && !repeat; ++i)
        for (int j = i + 1; j < w; ++j)
          if (entries[i] == entries[j]) {
            repeat = true;
            break;
          }
      if (repeat) {
        words::ExprPtr acc = words::make_generator(entries[0]);
        for (int i = 1; i < w; ++i)
          acc = words::make_bracket(acc, words::make_generator(entries[i]));
        CHECK(collect(*acc, *ctx).is_identity());
      }
      int i = w - 1;
      while (i >= 0 && entries[i] == 3) entries[i--] = 1;
      if (i < 0) break;
      ++entries[i];
    }
  }
}

TEST_CASE("torsion of basis commutators in modular mode") {
  for (auto [p, r] : std::array<std::pair<std::uint32_t, std::uint32_t>, 2>{{{3, 2}, {5, 1}}}) {
    auto ctx = mod_ctx(3, p, r);
    long long q = 1;
    for (std::uint32_t i = 0; i < r; ++i) q *= p;
    for (std::uint32_t idx = 0; idx < ctx->basis_size(); ++idx) {
      CHECK(power(basis_nf(idx), q, *ctx).is_identity());
      CHECK_FALSE(power(basis_nf(idx), q / p, *ctx).is_identity());
    }
  }
}

TEST_CASE("group laws on normal forms") {
  auto ctx = mod_ctx(3);
  std::mt19937_64 rng(43);
  words::RandomExprOptions opt;
  opt.n = 3;
  opt.max_depth = 3;
  for (int t = 0; t < 50; ++t) {
    NormalForm a = collect(*words::random_expr(rng, opt), *ctx);
    CHECK(multiply(a, identity_nf(), *ctx) == a);
    CHECK(multiply(identity_nf(), a, *ctx) == a);
    CHECK(multiply(a, inverse(a, *ctx), *ctx).is_identity());
    CHECK(inverse(inverse(a, *ctx), *ctx) == a);
    CHECK(power(a, 0, *ctx).is_identity());
    CHECK(power(a, -1, *ctx) == inverse(a, *ctx));
    NormalForm sq = multiply(a, a, *ctx);
    CHECK(power(a, 2, *ctx) == sq);
    CHECK(power(a, 5, *ctx) == multiply(sq, multiply(sq, a, *ctx), *ctx));
    CHECK(power(a, BigInt(5), *ctx) == power(a, 5, *ctx));
    CHECK(cohen::commutator(a, identity_nf(), *ctx).is_identity());
    CHECK(cohen::commutator(a, a, *ctx).is_identity());
  }
}

TEST_CASE("commutator against parsed brackets") {
  auto ctx = z_ctx(2);
  NormalForm lhs =
      commutator(collect(parse("x2", 2), *ctx), collect(parse("x1", 2), *ctx), *ctx);
  CHECK(lhs == collect(parse("[x2,x1]", 2), *ctx));
  CHECK(inverse(collect(parse("[x1,x2]", 2), *ctx), *ctx) ==
        collect(parse("[x2,x1]", 2), *ctx));
}

TEST_CASE("structure constants") {
  auto ctx = mod_ctx(3);
  for (std::uint32_t i = 0; i < ctx->basis_size(); ++i) {
    CHECK(structure_constant(i, i, *ctx).is_identity());
    for (std::uint32_t j = 0; j < ctx->basis_size(); ++j) {
      NormalForm ab = structure_constant(i, j, *ctx);
      NormalForm ba = structure_constant(j, i, *ctx);
      CHECK(multiply(ab, ba, *ctx).is_identity());
      // agreement with the generic commutator
      CHECK(ab == commutator(basis_nf(i), basis_nf(j), *ctx));
    }
  }
  // [[x1,x2],x3] is itself a canonical basis element
  std::uint32_t b12 = ctx->basis_index({1, 2});
  std::uint32_t x3 = ctx->basis_index({3});
  NormalForm sc = structure_constant(b12, x3, *ctx);
  REQUIRE(sc.coeffs.size() == 1);
  CHECK(sc.coeffs[0].first == ctx->basis_index({1, 2, 3}));
  CHECK(sc.coeffs[0].second == 1);
}

TEST_CASE("engel node collects like its unfolding") {
  auto ctx = mod_ctx(3);
  std::mt19937_64 rng(47);
  words::RandomExprOptions opt;
  opt.n = 3;
  opt.max_depth = 2;
  for (int t = 0; t < 30; ++t) {
    auto x = words::random_expr(rng, opt);
    auto y = words::random_expr(rng, opt);
    int depth = 1 + static_cast<int>(rng() % 3);
    CHECK(collect(*words::make_engel(x, y, depth), *ctx) ==
          collect(*words::engel(x, y, depth), *ctx));
  }
}

TEST_CASE("powers of the full product in modular mode") {
  // (x1 x2)^{p^r} dies: the only correction is the commutator to the
  // binomial C(p^r, 2), and p^r divides it for odd p
  auto ctx = mod_ctx(2);
  CHECK(collect(parse("(x1 x2)^9", 2), *ctx).is_identity());
  CHECK(power(collect(parse("x1 x2", 2), *ctx), 9, *ctx).is_identity());
  auto ctx5 = mod_ctx(2, 5, 2);
  CHECK(power(collect(parse("x1 x2", 2), *ctx5), 25, *ctx5).is_identity());
}

TEST_CASE("errors") {
  auto ctx = z_ctx(2);
  CHECK_THROWS_AS(collect(*words::make_generator(3), *ctx), std::out_of_range);
  CHECK_THROWS_AS(make_context(0, CoeffMode::integers()), std::invalid_argument);
  CHECK_THROWS_AS(make_context(8, CoeffMode::integers()), std::invalid_argument);
  CHECK_THROWS_AS(CoeffMode::mod_prime_power(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(CoeffMode::mod_prime_power(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(CoeffMode::mod_prime_power(3, 0), std::invalid_argument);
}

TEST_CASE("consistency check passes on sound contexts") {
  for (int n = 1; n <= 3; ++n) {
    auto rep = consistency_check(*mod_ctx(n), 60);
    CHECK(rep.passed);
    CHECK(rep.witness.empty());
    auto repz = consistency_check(*z_ctx(n), 40);
    CHECK(repz.passed);
  }
  // n = 1 modular: the cyclic group of order p^r
  auto tiny = consistency_check(*mod_ctx(1), 50);
  CHECK(tiny.passed);
}

TEST_CASE("consistency check detects a corrupted structure constant") {
  auto ctx = mod_ctx(3);
  // poison [b_j, b_i] for the first weight-2 pair against a generator
  NormalForm bogus;
  bogus.coeffs = {{ctx->basis_index({1, 2, 3}), 7}};
  ctx->override_structure_constant(ctx->basis_index({1, 2}), ctx->basis_index({1}), bogus);
  auto rep = consistency_check(*ctx, 120);
  CHECK_FALSE(rep.passed);
  CHECK_FALSE(rep.witness.empty());
}

TEST_CASE("powers by binomials beyond 64 bits") {
  // v_5(C(125,62)) = 3, so the 125th-power torsion kills the power exactly
  auto ctx = mod_ctx(2, 5, 3);
  BigInt huge = binomial(125, 62);
  REQUIRE_FALSE(huge.fits_int64());
  CHECK(power(basis_nf(0), huge, *ctx).is_identity());
  CHECK(power(basis_nf(0), huge + BigInt(1), *ctx) == basis_nf(0));
  CHECK(collect(*words::make_power(words::make_generator(1), huge), *ctx).is_identity());
  // both routes agree on a composite word raised to the big exponent
  auto w = words::make_power(parse("x1 x2", 2), huge);
  CHECK(collect(*w, *ctx) == collect_via_representation(*w, *ctx));
}

TEST_CASE("basis images are exactly one plus their multilinear part") {
  // the whole extraction scheme rests on mu(b) = 1 + L_b with L_b^2 = 0
  for (bool modular : {false, true}) {
    ContextPtr ctx = modular ? mod_ctx(4) : z_ctx(4);
    const auto& alg = ctx->algebra();
    for (std::uint32_t idx = 0; idx < ctx->basis_size(); ++idx) {
      auto img = alg.evaluate(*ctx->basis_at(idx).to_expr());
      auto expected = alg.one();
      for (const auto& [mono, c] : ctx->lie_part(idx))
        expected[mono] = alg.canon_coeff(c);
      CHECK(img == expected);
      // nilpotency of the lie part
      auto eps = expected;
      eps[0] = 0;
      bool square_zero = true;
      for (long long v : alg.mul(eps, eps))
        square_zero = square_zero && alg.canon_coeff(v) == 0;
      CHECK(square_zero);
    }
  }
}

TEST_CASE("shared contexts serve concurrent collectors") {
  auto ctx = mod_ctx(4);
  NormalForm reference = collect(parse("(x1 x2 x3 x4)^13", 4), *ctx);
  std::atomic<int> mismatches{0};
  auto worker = [&](int id) {
    std::mt19937_64 rng(1000 + id);
    words::RandomExprOptions opt;
    opt.n = 4;
    opt.max_depth = 3;
    for (int t = 0; t < 40; ++t) {
      auto e = words::random_expr(rng, opt);
      if (collect(*e, *ctx) != collect_via_representation(*e, *ctx)) ++mismatches;
      if (collect(parse("(x1 x2 x3 x4)^13", 4), *ctx) != reference) ++mismatches;
    }
    for (std::uint32_t i = 0; i < ctx->basis_size(); i += 3)
      for (std::uint32_t j = 0; j < ctx->basis_size(); j += 5)
        if (!multiply(structure_constant(i, j, *ctx), structure_constant(j, i, *ctx), *ctx)
                 .is_identity())
          ++mismatches;
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < 8; ++i) pool.emplace_back(worker, i);
  for (auto& t : pool) t.join();
  CHECK(mismatches.load() == 0);
}
