#include "cohen/expr_random.hpp"

namespace cohen::words {

namespace {

// avoids distribution objects so sequences are identical across stdlibs
std::uint64_t below(std::mt19937_64& rng, std::uint64_t k) { return rng() % k; }

ExprPtr gen_rec(std::mt19937_64& rng, const RandomExprOptions& opt, int depth) {
  if (depth <= 0) return make_generator(1 + static_cast<int>(below(rng, opt.n)));

  switch (below(rng, opt.printable ? 20 : 22)) {
    case 0: case 1: case 2: case 3: case 4: case 5: case 6:
      return make_generator(1 + static_cast<int>(below(rng, opt.n)));
    case 7:
      return make_identity();
    case 8: case 9: case 10: case 11: case 12: {
      std::size_t count = 2 + below(rng, 3);
      std::vector<ExprPtr> factors;
      for (std::size_t i = 0; i < count; ++i)
        factors.push_back(gen_rec(rng, opt, depth - 1));
      return make_product(std::move(factors));
    }
    case 13: case 14: case 15: {
      long long e = static_cast<long long>(below(rng, 2 * opt.max_abs_exp + 1)) - opt.max_abs_exp;
      return make_power(gen_rec(rng, opt, depth - 1), BigInt(e));
    }
    case 16: case 17: case 18:
      return make_bracket(gen_rec(rng, opt, depth - 1), gen_rec(rng, opt, depth - 1));
    case 19:
      return make_engel(gen_rec(rng, opt, depth - 1), gen_rec(rng, opt, depth - 1),
                        1 + static_cast<int>(below(rng, 3)));
    default:
      return make_inverse(gen_rec(rng, opt, depth - 1));
  }
}

}  // namespace

ExprPtr random_expr(std::mt19937_64& rng, const RandomExprOptions& opt) {
  return gen_rec(rng, opt, opt.max_depth);
}

}  // namespace cohen::words
