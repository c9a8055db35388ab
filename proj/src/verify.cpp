#include "cohen/verify.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <functional>
#include <numeric>
#include <thread>
#include <vector>

#include "cohen/cache.hpp"
#include "cohen/collect.hpp"
#include "cohen/expr_random.hpp"
#include "cohen/identities.hpp"
#include "cohen/perm.hpp"
#include "cohen/subgroups.hpp"

namespace cohen::verify {

namespace {

using nlohmann::ordered_json;
using words::ExprPtr;

struct CaseOutcome {
  ordered_json report;
  int verified = 0;
  int falsified = 0;
  int inconclusive = 0;
};

using Case = std::function<CaseOutcome()>;

/// Shares one context per (n, mode) across the whole run and connects
/// it to the on-disk structure-constant cache when one is configured.
class ContextPool {
public:
  explicit ContextPool(std::string dir) : dir_(std::move(dir)) {}

  ContextPtr get(int n, const CoeffMode& mode) {
    std::string key = std::to_string(n) + "/" + mode.to_string();
    auto it = pool_.find(key);
    if (it != pool_.end()) return it->second;
    ContextPtr ctx = make_context(n, mode);
    if (!dir_.empty()) {
      try {
        load_structure_cache(*ctx, dir_ + "/" + cache_file_name(*ctx));
      } catch (const std::exception&) {
        // cold start: absent or mismatching caches are recomputed
      }
    }
    pool_.emplace(std::move(key), ctx);
    return ctx;
  }

  void save_all() const {
    if (dir_.empty()) return;
    for (const auto& [key, ctx] : pool_) {
      try {
        save_structure_cache(*ctx, dir_ + "/" + cache_file_name(*ctx));
      } catch (const std::exception&) {
        // an unwritable cache directory must not fail the run
      }
    }
  }

private:
  std::string dir_;
  std::map<std::string, ContextPtr> pool_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed ^ (salt + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string mode_name(const CoeffMode& mode) { return mode.to_string(); }

ordered_json params_json(const std::vector<std::pair<std::string, std::string>>& ps) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : ps) j[k] = v;
  return j;
}

ordered_json identity_json(const identities::IdentityReport& r) {
  return ordered_json{{"kind", "identity"},
                      {"claim", r.claim_id},
                      {"parameters", params_json(r.parameters)},
                      {"status", identities::to_string(r.status)},
                      {"lhs_nf", r.lhs_nf},
                      {"rhs_nf", r.rhs_nf},
                      {"note", r.note}};
}

CaseOutcome outcome_of(const identities::IdentityReport& r) {
  CaseOutcome out;
  out.report = identity_json(r);
  if (r.status == identities::Status::Verified)
    out.verified = 1;
  else if (r.status == identities::Status::Falsified)
    out.falsified = 1;
  return out;
}

ordered_json verdict_json(const subgroups::MembershipVerdict& v) {
  return ordered_json{{"kind", "membership"},
                      {"claim", v.claim},
                      {"parameters", params_json(v.parameters)},
                      {"element", v.element},
                      {"subgroup", v.subgroup},
                      {"status", subgroups::to_string(v.status)},
                      {"note", v.note}};
}

CaseOutcome outcome_of(const subgroups::MembershipVerdict& v) {
  CaseOutcome out;
  out.report = verdict_json(v);
  switch (v.status) {
    case subgroups::Membership::Member: out.verified = 1; break;
    case subgroups::Membership::NonMember: out.falsified = 1; break;
    case subgroups::Membership::Inconclusive: out.inconclusive = 1; break;
  }
  return out;
}

ExprPtr full_product_omitting(int n, int skip) {
  std::vector<ExprPtr> fs;
  for (int i = 1; i <= n; ++i)
    if (i != skip) fs.push_back(words::make_generator(i));
  return words::make_product(std::move(fs));
}

ExprPtr full_product(int n) {
  std::vector<ExprPtr> fs;
  for (int i = 1; i <= n; ++i) fs.push_back(words::make_generator(i));
  if (fs.size() == 1) return fs[0];
  return words::make_product(std::move(fs));
}

// one aggregated case: the identity for k = 1..kmax with one (x, g)
Case make_q_case(bool is_q1, ContextPtr ctx, int x, ExprPtr g, std::string g_label, int kmax) {
  return [=]() {
    identities::IdentityReport agg;
    agg.claim_id = is_q1 ? "q1" : "q2";
    agg.parameters = {{"n", std::to_string(ctx->n())},
                      {"mode", mode_name(ctx->mode())},
                      {"x", "x" + std::to_string(x)},
                      {"g", g_label},
                      {"kmax", std::to_string(kmax)}};
    auto start = std::chrono::steady_clock::now();
    agg.status = identities::Status::Verified;
    for (int k = 1; k <= kmax; ++k) {
      ExprPtr lhs, rhs;
      if (is_q1) {
        lhs = words::make_bracket(words::make_generator(x),
                                  words::make_power(g, BigInt(static_cast<long long>(k))));
        rhs = identities::rhs_q1(x, g, k);
      } else {
        lhs = words::make_power(words::make_product({g, words::make_generator(x)}),
                                BigInt(static_cast<long long>(k)));
        rhs = identities::rhs_q2(g, x, k);
      }
      auto rep = identities::verify_identity(lhs, rhs, *ctx, agg.claim_id, {});
      if (rep.status == identities::Status::Falsified) {
        agg.status = identities::Status::Falsified;
        agg.lhs_nf = rep.lhs_nf;
        agg.rhs_nf = rep.rhs_nf;
        agg.note = "failed at k=" + std::to_string(k);
        break;
      }
    }
    agg.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return outcome_of(agg);
  };
}

std::vector<CoeffMode> filtered_modes(const Options& opt,
                                      const std::vector<CoeffMode>& defaults) {
  if (opt.mode.empty()) return defaults;
  std::vector<CoeffMode> out;
  for (const auto& m : defaults)
    if ((opt.mode == "z" && !m.modular()) || (opt.mode == "mod" && m.modular()))
      out.push_back(m);
  return out;
}

void add_q_cases(std::vector<Case>& cases, bool is_q1, const Options& opt,
                 ContextPool& pool) {
  int maxn = opt.n > 0 ? std::min(opt.n, 5) : 4;
  std::vector<CoeffMode> modes = filtered_modes(
      opt, {CoeffMode::integers(), CoeffMode::mod_prime_power(opt.p, opt.r)});
  for (int n = 1; n <= maxn; ++n) {
    for (const auto& mode : modes) {
      ContextPtr ctx = pool.get(n, mode);
      for (int x = 1; x <= n; ++x) {
        cases.push_back(make_q_case(is_q1, ctx, x, full_product_omitting(n, x),
                                    "product of the other generators", opt.kmax));
        for (int t = 0; t < 20; ++t) {
          std::mt19937_64 rng(mix_seed(opt.seed, (is_q1 ? 1 : 2) * 1000003ULL + n * 10007ULL +
                                                     (mode.modular() ? 7 : 0) * 997ULL + x * 101ULL +
                                                     t));
          words::RandomExprOptions gen_opt;
          gen_opt.n = n;
          gen_opt.max_depth = 3;
          gen_opt.max_abs_exp = 4;
          ExprPtr g = words::random_expr(rng, gen_opt);
          cases.push_back(make_q_case(is_q1, ctx, x, g, words::print(g), opt.kmax));
        }
      }
    }
  }
}

// the recorded counterexample: q1 with x outside the generating set
void add_q1_negative_control(std::vector<Case>& cases, const Options& opt) {
  cases.push_back([opt]() {
    struct Candidate {
      int n;
      std::string x, g;
    };
    std::vector<Candidate> candidates = {
        {4, "x1 x2", "x3 x4"},      {4, "[x1,x2]", "x3 x4"},    {5, "x1 x2", "x3 x4 x5"},
        {5, "[x1,x2]", "x3 x4 x5"}, {5, "x1 x2 x3", "x4 x5"},
    };
    identities::IdentityReport rep;
    rep.claim_id = "q1-negative-control";
    rep.parameters = {{"mode", "Z/" + std::to_string(opt.p) + "^" + std::to_string(opt.r)}};
    auto start = std::chrono::steady_clock::now();
    int scanned = 0;
    rep.status = identities::Status::Falsified;  // control fails when no counterexample appears
    rep.note = "no counterexample found in the search space";
    for (const auto& cand : candidates) {
      ContextPtr ctx = make_context(cand.n, CoeffMode::mod_prime_power(opt.p, opt.r));
      ExprPtr x = words::parse(cand.x, cand.n);
      ExprPtr g = words::parse(cand.g, cand.n);
      for (int k = 2; k <= 4; ++k) {
        ++scanned;
        // q1 with x an arbitrary word: same right side, x substituted
        std::vector<ExprPtr> factors;
        for (int i = 1; i <= k; ++i) {
          BigInt c = binomial(k, i);
          ExprPtr f = words::engel(x, g, i);
          factors.push_back(c == BigInt(1) ? f : words::make_power(f, c));
        }
        ExprPtr rhs = words::make_product(std::move(factors));
        ExprPtr lhs = words::make_bracket(x, words::make_power(g, BigInt(static_cast<long long>(k))));
        NormalForm l = collect(*lhs, *ctx);
        NormalForm r = collect(*rhs, *ctx);
        if (l != r) {
          rep.status = identities::Status::Verified;
          rep.lhs_nf = print_normal_form(l, *ctx);
          rep.rhs_nf = print_normal_form(r, *ctx);
          rep.note = "hypothesis is sharp: counterexample at n=" + std::to_string(cand.n) +
                     " x=" + cand.x + " g=" + cand.g + " k=" + std::to_string(k);
          goto done;
        }
      }
    }
  done:
    rep.parameters.emplace_back("cases_scanned", std::to_string(scanned));
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return outcome_of(rep);
  });
}

void add_engel_cases(std::vector<Case>& cases, const Options& opt, ContextPool& pool) {
  int maxn = opt.n > 0 ? std::min(opt.n, 4) : 4;
  for (int n = 1; n <= maxn; ++n) {
    ContextPtr ctx = pool.get(n + 1, CoeffMode::mod_prime_power(opt.p, opt.r));
    for (int l = 1; l <= n; ++l) {
      if (opt.l > 0 && l != opt.l) continue;
      cases.push_back([ctx, n, l]() {
        ExprPtr lhs = words::make_engel(words::make_generator(n + 1), full_product(n), l);
        ExprPtr rhs = identities::rhs_engel_decomposition(n, l);
        return outcome_of(identities::verify_identity(
            lhs, rhs, *ctx, "engel",
            {{"n", std::to_string(n)}, {"l", std::to_string(l)},
             {"mode", mode_name(ctx->mode())}}));
      });
    }
    // vanishing past the class bound
    cases.push_back([ctx, n]() {
      ExprPtr lhs = words::make_engel(words::make_generator(n + 1), full_product(n), n + 1);
      return outcome_of(identities::verify_identity(
          lhs, words::make_identity(), *ctx, "engel-vanishing",
          {{"n", std::to_string(n)}, {"l", std::to_string(n + 1)},
           {"mode", mode_name(ctx->mode())}}));
    });
  }
}

void add_shuffle_cases(std::vector<Case>& cases, const Options& opt, ContextPool& pool) {
  int maxn = opt.n > 0 ? std::min(opt.n, 4) : 4;
  for (int n = 1; n <= maxn; ++n) {
    ContextPtr ctx = pool.get(n + 1, CoeffMode::mod_prime_power(opt.p, opt.r));
    for (int l = 1; l <= std::min(3, n); ++l) {
      if (opt.l > 0 && l != opt.l) continue;
      cases.push_back([ctx, n, l]() {
        ExprPtr lhs = identities::rhs_shuffle_form(n, l);
        ExprPtr rhs = identities::rhs_engel_decomposition(n, l);
        return outcome_of(identities::verify_identity(
            lhs, rhs, *ctx, "shuffle",
            {{"n", std::to_string(n)}, {"l", std::to_string(l)},
             {"mode", mode_name(ctx->mode())}}));
      });
    }
  }
}

void add_pr_cases(std::vector<Case>& cases, const Options& opt, ContextPool& pool) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> profiles;
  if (opt.profile_explicit)
    profiles = {{opt.p, opt.r}};
  else
    profiles = {{3, 2}, {5, 2}};
  int maxn = opt.n > 0 ? std::min(opt.n, 3) : 3;
  for (auto [p, r] : profiles) {
    for (int n = 1; n <= maxn; ++n) {
      ContextPtr ctx = pool.get(n + 1, CoeffMode::mod_prime_power(p, r));
      cases.push_back([ctx, n, p, r]() {
        long long q = 1;
        for (std::uint32_t i = 0; i < r; ++i) q *= p;
        ExprPtr lhs = words::make_power(full_product(n + 1), BigInt(q));
        ExprPtr rhs = identities::power_recursion_pr(n, p, r);
        return outcome_of(identities::verify_identity(
            lhs, rhs, *ctx, "pr",
            {{"n", std::to_string(n)}, {"p", std::to_string(p)}, {"r", std::to_string(r)}}));
      });
    }
  }

  // binomial valuation side condition v_p(C(p^r, i)) = r - v_p(i)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> valuation_profiles = {
      {3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {11, 2}};
  for (auto [p, r] : valuation_profiles) {
    cases.push_back([p, r]() {
      identities::IdentityReport rep;
      rep.claim_id = "pr-valuation";
      rep.parameters = {{"p", std::to_string(p)}, {"r", std::to_string(r)}};
      auto start = std::chrono::steady_clock::now();
      std::uint32_t q = 1;
      for (std::uint32_t i = 0; i < r; ++i) q *= p;
      rep.status = identities::Status::Verified;
      for (std::uint32_t i = 1; i <= q; ++i) {
        int vi = 0;
        for (std::uint32_t t = i; t % p == 0; t /= p) ++vi;
        if (binomial(q, i).valuation(p) != static_cast<int>(r) - vi) {
          rep.status = identities::Status::Falsified;
          rep.note = "valuation mismatch at i=" + std::to_string(i);
          break;
        }
      }
      rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      return outcome_of(rep);
    });
  }
}

void add_lemma22_cases(std::vector<Case>& cases, const Options& opt, int hard_max) {
  int maxn = opt.n > 0 ? std::min(opt.n, hard_max) : 8;
  for (int n = 1; n <= maxn; ++n) {
    cases.push_back([n]() {
      identities::IdentityReport rep;
      rep.claim_id = "lemma22";
      rep.parameters = {{"n", std::to_string(n)}};
      auto start = std::chrono::steady_clock::now();
      std::vector<long long> sums(n + 1, 0);
      perm::Perm p(n);
      std::iota(p.begin(), p.end(), 1);
      do {
        auto table = perm::division_count_table(p);
        for (int l = 1; l <= n; ++l) sums[l] += table[l];
      } while (std::next_permutation(p.begin(), p.end()));
      rep.status = identities::Status::Verified;
      for (int l = 1; l <= n; ++l) {
        BigInt expected = factorial(l) * perm::stirling2(n, l);
        if (BigInt(sums[l]) != expected) {
          rep.status = identities::Status::Falsified;
          rep.note = "sum mismatch at l=" + std::to_string(l) + ": got " +
                     std::to_string(sums[l]) + ", expected " + expected.to_string();
          break;
        }
      }
      rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      return outcome_of(rep);
    });
  }
}

void add_lemma23_cases(std::vector<Case>& cases, const Options& opt) {
  int maxn = opt.n > 0 ? std::min(opt.n, 8) : 8;
  for (int n = 1; n <= maxn; ++n) {
    cases.push_back([n]() {
      identities::IdentityReport rep;
      rep.claim_id = "lemma23";
      rep.parameters = {{"n", std::to_string(n)}};
      auto start = std::chrono::steady_clock::now();
      // sums[l][first]
      std::vector<std::vector<long long>> sums(n + 1, std::vector<long long>(n + 1, 0));
      perm::Perm p(n);
      std::iota(p.begin(), p.end(), 1);
      do {
        auto table = perm::division_count_table(p);
        for (int l = 1; l <= n; ++l) sums[l][p.front()] += table[l];
      } while (std::next_permutation(p.begin(), p.end()));

      rep.status = identities::Status::Verified;
      int forward_holds = 0, reverse_holds = 0, total = 0;
      for (int l = 1; l <= n && rep.status == identities::Status::Verified; ++l) {
        long long fact = factorial(l - 1).to_int64();
        for (int i = 1; i <= n; ++i) {
          ++total;
          if (sums[l][i] % fact == 0) ++forward_holds;
          else {
            rep.status = identities::Status::Falsified;
            rep.note = "(l-1)! does not divide the sum at l=" + std::to_string(l) +
                       " i=" + std::to_string(i);
            break;
          }
          if (sums[l][i] != 0 && fact % sums[l][i] == 0) ++reverse_holds;
        }
        if (rep.status != identities::Status::Verified) break;
        // closed forms at i = 1 and i = n
        BigInt f(fact);
        if (BigInt(sums[l][1]) != perm::stirling2(n, l) * f) {
          rep.status = identities::Status::Falsified;
          rep.note = "closed form at i=1 failed for l=" + std::to_string(l);
        } else if (BigInt(sums[l][n]) != perm::stirling2(n - 1, l - 1) * f) {
          rep.status = identities::Status::Falsified;
          rep.note = "closed form at i=n failed for l=" + std::to_string(l);
        }
      }
      if (rep.status == identities::Status::Verified)
        rep.note = "stated direction holds in " + std::to_string(forward_holds) + "/" +
                   std::to_string(total) + " cases; reverse direction (sum divides (l-1)!) holds in " +
                   std::to_string(reverse_holds) + "/" + std::to_string(total);
      rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      return outcome_of(rep);
    });
  }
}

void add_claim_cases(std::vector<Case>& cases, const std::string& internal_id,
                     const Options& opt) {
  std::vector<int> ns;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> profiles;
  std::vector<int> ls = {0};

  if (internal_id == "lemma25") {
    ns = opt.n > 0 ? std::vector<int>{opt.n} : std::vector<int>{3};
    profiles = opt.profile_explicit
                   ? std::vector<std::pair<std::uint32_t, std::uint32_t>>{{opt.p, opt.r}}
                   : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}};
    ls = opt.l > 0 ? std::vector<int>{opt.l} : std::vector<int>{2, 3};
  } else if (internal_id == "lemma26") {
    ns = opt.n > 0 ? std::vector<int>{opt.n} : std::vector<int>{2, 3};
    profiles = opt.profile_explicit
                   ? std::vector<std::pair<std::uint32_t, std::uint32_t>>{{opt.p, opt.r}}
                   : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}};
  } else if (internal_id == "prop27_np2" || internal_id == "prop27_np1") {
    ns = opt.n > 0 ? std::vector<int>{opt.n} : std::vector<int>{2, 3};
    profiles = opt.profile_explicit
                   ? std::vector<std::pair<std::uint32_t, std::uint32_t>>{{opt.p, opt.r}}
                   : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}};
  } else if (internal_id == "cor28") {
    ns = opt.n > 0 ? std::vector<int>{opt.n} : std::vector<int>{3, 4};
    profiles = opt.profile_explicit
                   ? std::vector<std::pair<std::uint32_t, std::uint32_t>>{{opt.p, opt.r}}
                   : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}};
  } else {  // remark_r1
    ns = opt.n > 0 ? std::vector<int>{opt.n} : std::vector<int>{1, 2, 3, 4};
    profiles = opt.profile_explicit
                   ? std::vector<std::pair<std::uint32_t, std::uint32_t>>{{opt.p, 1}}
                   : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}};
  }

  for (int n : ns)
    for (auto [p, r] : profiles) {
      std::vector<int> ls_here = ls;
      if (internal_id == "lemma25" && opt.l == 0) {
        // the default block counts are those the rank admits
        ls_here.clear();
        for (int l = 2; l <= std::min(3, n); ++l) ls_here.push_back(l);
      }
      for (int l : ls_here) {
        subgroups::ClaimParams q;
        q.n = n;
        q.p = p;
        q.r = r;
        if (l > 0) q.l = l;
        subgroups::validate_claim_params(internal_id, q);
        cases.push_back([internal_id, q]() {
          auto verdicts = subgroups::verify_claims(internal_id, q);
          CaseOutcome out;
          // one verdict per claim instance in the current claim set
          out = outcome_of(verdicts.front());
          return out;
        });
      }
    }
}

void add_consistency_cases(std::vector<Case>& cases, const Options& opt) {
  int maxn = opt.n > 0 ? std::min(opt.n, 4) : 4;
  std::vector<CoeffMode> modes = {CoeffMode::integers()};
  if (opt.profile_explicit) {
    modes.push_back(CoeffMode::mod_prime_power(opt.p, opt.r));
  } else {
    modes.push_back(CoeffMode::mod_prime_power(3, 2));
    modes.push_back(CoeffMode::mod_prime_power(5, 2));
  }
  modes = filtered_modes(opt, modes);
  for (int n = 1; n <= maxn; ++n) {
    for (const auto& mode : modes) {
      cases.push_back([n, mode, opt]() {
        ContextPtr ctx = make_context(n, mode);
        auto rep = consistency_check(*ctx, opt.trials, mix_seed(opt.seed, n * 31 + mode.p));
        CaseOutcome out;
        ordered_json notes = ordered_json::array();
        for (const auto& s : rep.notes) notes.push_back(s);
        out.report = ordered_json{{"kind", "consistency"},
                                  {"parameters",
                                   ordered_json{{"n", std::to_string(n)},
                                              {"mode", mode_name(mode)},
                                              {"trials", std::to_string(opt.trials)}}},
                                  {"status", rep.passed ? "verified" : "falsified"},
                                  {"checks_run", rep.checks_run},
                                  {"witness", rep.witness},
                                  {"notes", notes}};
        (rep.passed ? out.verified : out.falsified) = 1;
        return out;
      });
    }
  }
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

bool claim_known(const std::string& claim) {
  static const std::vector<std::string> known = {
      "q1",      "q2",      "engel",      "shuffle",    "pr",    "lemma22",
      "lemma23", "lemma25", "lemma26",    "prop27-np2", "prop27-np1",
      "cor28",   "remark-r1", "consistency", "all"};
  return std::find(known.begin(), known.end(), claim) != known.end();
}

RunManifest run(const Options& opt) {
  if (!claim_known(opt.claim)) throw std::invalid_argument("unknown claim: " + opt.claim);

  std::vector<Case> cases;
  auto want = [&](const char* name) { return opt.claim == "all" || opt.claim == name; };

  ContextPool pool(opt.cache_dir);
  if (want("q1")) {
    add_q_cases(cases, true, opt, pool);
    add_q1_negative_control(cases, opt);
  }
  if (want("q2")) add_q_cases(cases, false, opt, pool);
  if (want("engel")) add_engel_cases(cases, opt, pool);
  if (want("shuffle")) add_shuffle_cases(cases, opt, pool);
  if (want("pr")) add_pr_cases(cases, opt, pool);
  if (want("lemma22")) add_lemma22_cases(cases, opt, 9);
  if (want("lemma23")) add_lemma23_cases(cases, opt);
  if (want("lemma25")) add_claim_cases(cases, "lemma25", opt);
  if (want("lemma26")) add_claim_cases(cases, "lemma26", opt);
  if (opt.claim == "prop27-np2" || opt.claim == "all") add_claim_cases(cases, "prop27_np2", opt);
  if (opt.claim == "prop27-np1" || opt.claim == "all") add_claim_cases(cases, "prop27_np1", opt);
  if (want("cor28")) add_claim_cases(cases, "cor28", opt);
  if (opt.claim == "remark-r1" || opt.claim == "all") add_claim_cases(cases, "remark_r1", opt);
  if (want("consistency")) add_consistency_cases(cases, opt);

  std::vector<CaseOutcome> results(cases.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> errors{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cases.size()) break;
      try {
        results[i] = cases[i]();
      } catch (const std::exception& ex) {
        results[i].report = ordered_json{{"kind", "error"}, {"what", ex.what()}};
        ++errors;
      }
    }
  };

  int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  pool.save_all();

  RunManifest m;
  m.tool_version = kToolVersion;
  m.timestamp = iso_timestamp();
  m.options = ordered_json{{"claim", opt.claim}, {"n", opt.n},         {"p", opt.p},
                           {"r", opt.r},         {"mode", opt.mode},   {"kmax", opt.kmax},
                           {"l", opt.l},         {"jobs", opt.jobs},   {"trials", opt.trials},
                           {"seed", opt.seed}};
  m.reports = ordered_json::array();
  for (const auto& res : results) {
    m.reports.push_back(res.report);
    m.verified += res.verified;
    m.falsified += res.falsified;
    m.inconclusive += res.inconclusive;
  }
  m.errors = errors.load();
  if (m.falsified > 0 || m.errors > 0)
    m.overall = "fail";
  else if (m.inconclusive > 0)
    m.overall = "mixed";
  else
    m.overall = "pass";
  return m;
}

nlohmann::ordered_json manifest_json(const RunManifest& m) {
  return ordered_json{{"report-schema", 1},
                      {"tool_version", m.tool_version},
                      {"timestamp", m.timestamp},
                      {"options", m.options},
                      {"reports", m.reports},
                      {"summary", ordered_json{{"verified", m.verified},
                                               {"falsified", m.falsified},
                                               {"inconclusive", m.inconclusive},
                                               {"errors", m.errors}}},
                      {"overall", m.overall}};
}

std::string manifest_string(const RunManifest& m) { return manifest_json(m).dump(2) + "\n"; }

int exit_code(const RunManifest& m) { return m.overall == "fail" ? 1 : 0; }

}  // namespace cohen::verify
