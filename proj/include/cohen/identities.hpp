#ifndef COHEN_IDENTITIES_HPP
#define COHEN_IDENTITIES_HPP

#include <string>
#include <utility>
#include <vector>

#include "cohen/collect.hpp"
#include "cohen/expr.hpp"

namespace cohen::identities {

enum class Status { Verified, Falsified, Skipped };

std::string to_string(Status s);

struct IdentityReport {
  std::string claim_id;
  std::vector<std::pair<std::string, std::string>> parameters;
  Status status = Status::Skipped;
  std::string lhs_nf;  // witnesses, set when falsified
  std::string rhs_nf;
  long long elapsed_ms = 0;
  std::string note;
};

/// Right side of [x, g^k] = prod_{i=1..k} [x,_i g]^C(k,i), with exact
/// binomial exponents and factors in ascending i.
words::ExprPtr rhs_q1(int x, const words::ExprPtr& g, int k);

/// Right side of (g x)^k = g^k x^k prod_{i=1..k-1} [x,_i g]^C(k,i+1).
words::ExprPtr rhs_q2(const words::ExprPtr& g, int x, int k);

/// Decomposition of [x_{n+1},_l x_1..x_n] as the double product over
/// i = l..n and the l-block-divisible permutations of the i-subsets of
/// {1..n}, each bracket raised to its division count.
words::ExprPtr rhs_engel_decomposition(int n, int l);

/// The same product indexed by compositions i_1+..+i_l = i and the
/// corresponding block shuffles, every factor with exponent 1.
words::ExprPtr rhs_shuffle_form(int n, int l);

/// Right side of the power recursion
/// (x_1..x_{n+1})^{p^r} = (x_1..x_n)^{p^r} prod_{p|i} [x_{n+1},_{i-1}(x_1..x_n)]^C(p^r,i);
/// binomial exponents stay exact, reduction happens in collection.
words::ExprPtr power_recursion_pr(int n, std::uint32_t p, std::uint32_t r);

IdentityReport verify_identity(const words::ExprPtr& lhs, const words::ExprPtr& rhs,
                               const GroupContext& ctx, std::string claim_id,
                               std::vector<std::pair<std::string, std::string>> parameters);

}  // namespace cohen::identities

#endif
