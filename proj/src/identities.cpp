#include "cohen/identities.hpp"

#include <chrono>
#include <numeric>

#include "cohen/perm.hpp"

namespace cohen::identities {

using words::ExprPtr;

std::string to_string(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::Falsified: return "falsified";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

namespace {

ExprPtr powered(ExprPtr base, const BigInt& e) {
  if (e == BigInt(1)) return base;
  return words::make_power(std::move(base), e);
}

ExprPtr generator_product(int from, int to) {
  std::vector<ExprPtr> fs;
  for (int i = from; i <= to; ++i) fs.push_back(words::make_generator(i));
  if (fs.size() == 1) return fs[0];
  return words::make_product(std::move(fs));
}

ExprPtr left_normalized(int head, const std::vector<int>& rest) {
  ExprPtr acc = words::make_generator(head);
  for (int v : rest) acc = words::make_bracket(acc, words::make_generator(v));
  return acc;
}

// k-subsets of {1..n} in lex order
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 1);
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int t = i + 1; t < k; ++t) cur[t] = cur[t - 1] + 1;
  }
  return out;
}

// compositions of total into parts >= 1, lex order
std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int left) -> void {
    if (left == 1) {
      cur.push_back(remaining);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int first = 1; first <= remaining - (left - 1); ++first) {
      cur.push_back(first);
      self(self, remaining - first, left - 1);
      cur.pop_back();
    }
  };
  if (parts >= 1 && total >= parts) rec(rec, total, parts);
  return out;
}

}  // namespace

ExprPtr rhs_q1(int x, const ExprPtr& g, int k) {
  if (k < 1) throw std::invalid_argument("rhs_q1 requires k >= 1");
  std::vector<ExprPtr> factors;
  for (int i = 1; i <= k; ++i)
    factors.push_back(powered(words::engel(words::make_generator(x), g, i), binomial(k, i)));
  if (factors.size() == 1) return factors[0];
  return words::make_product(std::move(factors));
}

ExprPtr rhs_q2(const ExprPtr& g, int x, int k) {
  if (k < 1) throw std::invalid_argument("rhs_q2 requires k >= 1");
  std::vector<ExprPtr> factors;
  factors.push_back(powered(g, BigInt(k)));
  factors.push_back(powered(words::make_generator(x), BigInt(k)));
  for (int i = 1; i <= k - 1; ++i)
    factors.push_back(powered(words::engel(words::make_generator(x), g, i), binomial(k, i + 1)));
  return words::make_product(std::move(factors));
}

ExprPtr rhs_engel_decomposition(int n, int l) {
  if (l < 1 || l > n) throw std::invalid_argument("decomposition requires 1 <= l <= n");
  std::vector<ExprPtr> factors;
  for (int i = l; i <= n; ++i) {
    for (const auto& subset : subsets(n, i)) {
      perm::Perm sigma = subset;  // ascending start, next_permutation walks lex order
      do {
        long long d = perm::count_divisions(sigma, l);
        if (d == 0) continue;
        std::vector<int> rest(sigma.begin(), sigma.end());
        factors.push_back(powered(left_normalized(n + 1, rest), BigInt(d)));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  }
  if (factors.empty()) return words::make_identity();
  return words::make_product(std::move(factors));
}

ExprPtr rhs_shuffle_form(int n, int l) {
  if (l < 1 || l > n) throw std::invalid_argument("shuffle form requires 1 <= l <= n");
  std::vector<ExprPtr> factors;
  for (int i = l; i <= n; ++i) {
    for (const auto& subset : subsets(n, i)) {
      for (const auto& sizes : compositions(i, l)) {
        for (const auto& sigma : perm::shuffles_over(sizes, subset))
          factors.push_back(left_normalized(n + 1, sigma));
      }
    }
  }
  if (factors.empty()) return words::make_identity();
  return words::make_product(std::move(factors));
}

ExprPtr power_recursion_pr(int n, std::uint32_t p, std::uint32_t r) {
  CoeffMode mode = CoeffMode::mod_prime_power(p, r);
  const std::uint32_t q = mode.modulus();  // p^r
  std::vector<ExprPtr> factors;
  factors.push_back(powered(generator_product(1, n), BigInt(static_cast<long long>(q))));
  for (std::uint32_t i = p; i <= q; i += p) {
    ExprPtr bracket =
        words::engel(words::make_generator(n + 1), generator_product(1, n), static_cast<int>(i) - 1);
    factors.push_back(powered(std::move(bracket), binomial(q, i)));
  }
  return words::make_product(std::move(factors));
}

IdentityReport verify_identity(const ExprPtr& lhs, const ExprPtr& rhs, const GroupContext& ctx,
                               std::string claim_id,
                               std::vector<std::pair<std::string, std::string>> parameters) {
  auto start = std::chrono::steady_clock::now();
  IdentityReport report;
  report.claim_id = std::move(claim_id);
  report.parameters = std::move(parameters);

  NormalForm l = collect(*lhs, ctx);
  NormalForm r = collect(*rhs, ctx);
  if (l == r) {
    report.status = Status::Verified;
  } else {
    report.status = Status::Falsified;
    report.lhs_nf = print_normal_form(l, ctx);
    report.rhs_nf = print_normal_form(r, ctx);
  }
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace cohen::identities
