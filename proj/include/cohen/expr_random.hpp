#ifndef COHEN_EXPR_RANDOM_HPP
#define COHEN_EXPR_RANDOM_HPP

#include <random>

#include "cohen/expr.hpp"

namespace cohen::words {

struct RandomExprOptions {
  int n = 2;
  int max_depth = 3;
  int max_abs_exp = 6;
  bool printable = false;  // restrict to trees the grammar round-trips
};

/// Deterministic random word generator (engine-independent); drives the
/// property tests and the randomized verification cases.
ExprPtr random_expr(std::mt19937_64& rng, const RandomExprOptions& opt);

}  // namespace cohen::words

#endif
