#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "cohen/perm.hpp"

using namespace cohen::perm;
using cohen::BigInt;

namespace {

// oracle: enumerate cut positions directly and validate every block
long long brute_divisions(const Perm& p, int l) {
  int n = static_cast<int>(p.size());
  std::vector<int> cuts(l - 1);
  std::iota(cuts.begin(), cuts.end(), 1);
  if (l == 1) {
    for (int i = 0; i + 1 < n; ++i)
      if (p[i] > p[i + 1]) return 0;
    return 1;
  }
  long long count = 0;
  // choose l-1 cut positions out of 1..n-1
  for (;;) {
    std::vector<int> bounds = {0};
    bounds.insert(bounds.end(), cuts.begin(), cuts.end());
    bounds.push_back(n);
    bool ok = true;
    for (std::size_t b = 0; ok && b + 1 < bounds.size(); ++b)
      for (int i = bounds[b]; ok && i + 1 < bounds[b + 1]; ++i)
        if (p[i] > p[i + 1]) ok = false;
    if (ok) ++count;
    int i = l - 2;
    while (i >= 0 && cuts[i] == n - 1 - (l - 2 - i)) --i;
    if (i < 0) break;
    ++cuts[i];
    for (int t = i + 1; t < l - 1; ++t) cuts[t] = cuts[t - 1] + 1;
  }
  return count;
}

// oracle: count partitions of an n-set into l nonempty blocks
long long brute_stirling(int n, int l) {
  long long count = 0;
  std::vector<int> assign(n, 0);
  for (;;) {
    std::set<int> used(assign.begin(), assign.end());
    if (static_cast<int>(used.size()) == l &&
        *std::max_element(assign.begin(), assign.end()) == l - 1) {
      // canonical labeling: block labels appear in first-use order
      std::map<int, int> first_use;
      bool canonical = true;
      int next = 0;
      for (int a : assign) {
        if (!first_use.count(a)) {
          if (a != next++) canonical = false;
          first_use[a] = 1;
        }
      }
      if (canonical) ++count;
    }
    int i = n - 1;
    while (i >= 0 && assign[i] == l - 1) assign[i--] = 0;
    if (i < 0) break;
    ++assign[i];
  }
  return count;
}

}  // namespace

TEST_CASE("division counts: table values") {
  CHECK(count_divisions({1, 2, 3}, 2) == 2);
  CHECK(count_divisions({2, 1, 3}, 2) == 1);
  CHECK(count_divisions({2, 3, 1}, 2) == 1);
  CHECK(count_divisions({3, 1, 2}, 2) == 1);
  CHECK(count_divisions({1, 3, 2}, 2) == 1);
  CHECK(count_divisions({3, 2, 1}, 2) == 0);
}

TEST_CASE("division counts: identity closed form and oracle") {
  for (int n = 1; n <= 8; ++n) {
    Perm id(n);
    std::iota(id.begin(), id.end(), 1);
    for (int l = 1; l <= n; ++l)
      CHECK(count_divisions(id, l) == cohen::binomial(n - 1, l - 1).to_int64());
  }
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    int n = 1 + static_cast<int>(rng() % 7);
    Perm p(n);
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    int l = 1 + static_cast<int>(rng() % n);
    CHECK(count_divisions(p, l) == brute_divisions(p, l));
  }
  // extended symbol sets: only relative order matters
  CHECK(count_divisions({2, 5, 9}, 2) == 2);
  CHECK(count_divisions({9, 5, 2}, 2) == 0);
  CHECK_THROWS_AS(count_divisions({1, 2}, 3), std::invalid_argument);
}

TEST_CASE("division_count_table matches count_divisions") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(rng() % 7);
    Perm p(n);
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    auto table = division_count_table(p);
    for (int l = 1; l <= n; ++l) CHECK(table[l] == count_divisions(p, l));
  }
}

TEST_CASE("sigma tables") {
  auto rows = sigma_ln(3, 2);
  REQUIRE(rows.size() == 5);
  std::map<Perm, long long> expected = {{{1, 2, 3}, 2},
                                        {{2, 1, 3}, 1},
                                        {{2, 3, 1}, 1},
                                        {{3, 1, 2}, 1},
                                        {{1, 3, 2}, 1}};
  for (const auto& s : rows) CHECK(expected.at(s.perm) == s.d);
  CHECK(std::is_sorted(rows.begin(), rows.end(),
                       [](const PermStats& a, const PermStats& b) { return a.perm < b.perm; }));

  for (int n = 1; n <= 5; ++n) {
    auto only = sigma_ln(n, 1);
    REQUIRE(only.size() == 1);
    Perm id(n);
    std::iota(id.begin(), id.end(), 1);
    CHECK(only[0].perm == id);
    CHECK(only[0].d == 1);
  }

  // n=4, l=2 total = 2! * S(4,2) = 14
  long long total = 0;
  for (const auto& s : sigma_ln(4, 2)) total += s.d;
  CHECK(total == 14);
}

TEST_CASE("sigma_ln_at closed forms") {
  auto at1 = sigma_ln_at(3, 2, 1);
  long long sum1 = 0;
  for (const auto& s : at1) sum1 += s.d;
  CHECK(sum1 == 3);  // S(3,2) * 1!

  auto at3 = sigma_ln_at(3, 2, 3);
  REQUIRE(at3.size() == 1);
  CHECK(at3[0].perm == Perm{3, 1, 2});
  CHECK(at3[0].d == 1);  // S(2,1) * 1!

  for (int n = 2; n <= 5; ++n) {
    CHECK(sigma_ln_at(n, 1, 1).size() == 1);
    for (int i = 2; i <= n; ++i) CHECK(sigma_ln_at(n, 1, i).empty());
  }
  CHECK_THROWS_AS(sigma_ln_at(3, 2, 4), std::invalid_argument);
}

TEST_CASE("stirling2 against partition enumeration") {
  CHECK(stirling2(3, 2).to_int64() == 3);
  CHECK(stirling2(4, 2).to_int64() == 7);
  for (int n = 0; n <= 8; ++n) {
    CHECK(stirling2(n, n).to_int64() == (n >= 0 ? 1 : 0));
    if (n >= 1) CHECK(stirling2(n, 1).to_int64() == 1);
    for (int l = 1; l <= n; ++l)
      CHECK(stirling2(n, l).to_int64() == brute_stirling(n, l));
  }
  CHECK(stirling2(3, 5).is_zero());
  CHECK(stirling2(5, 0).is_zero());
}

TEST_CASE("lemma about total division counts, exhaustive small n") {
  for (int n = 1; n <= 7; ++n) {
    std::vector<long long> sums(n + 1, 0);
    Perm p(n);
    std::iota(p.begin(), p.end(), 1);
    do {
      auto table = division_count_table(p);
      for (int l = 1; l <= n; ++l) sums[l] += table[l];
    } while (std::next_permutation(p.begin(), p.end()));
    for (int l = 1; l <= n; ++l)
      CHECK(BigInt(sums[l]) == cohen::factorial(l) * stirling2(n, l));
  }
}

TEST_CASE("first-entry sums: divisibility and closed forms") {
  for (int n = 1; n <= 7; ++n) {
    for (int l = 1; l <= n; ++l) {
      long long fact = cohen::factorial(l - 1).to_int64();
      for (int i = 1; i <= n; ++i) {
        long long sum = 0;
        for (const auto& s : sigma_ln_at(n, l, i)) sum += s.d;
        CHECK(sum % fact == 0);
        if (i == 1) CHECK(BigInt(sum) == stirling2(n, l) * BigInt(fact));
        if (i == n) CHECK(BigInt(sum) == stirling2(n - 1, l - 1) * BigInt(fact));
      }
    }
  }
}

TEST_CASE("shuffles") {
  auto two = shuffles({1, 1});
  REQUIRE(two.size() == 2);
  CHECK(std::set<Perm>(two.begin(), two.end()) == std::set<Perm>{{1, 2}, {2, 1}});

  auto three = shuffles({2, 1});
  CHECK(three.size() == 3);  // multinomial(2,1)
  CHECK(std::set<Perm>(three.begin(), three.end()) ==
        std::set<Perm>{{1, 2, 3}, {1, 3, 2}, {2, 3, 1}});
  CHECK(shuffles({1, 1, 1}).size() == 6);

  // counts equal multinomials in general
  std::vector<std::vector<int>> size_sets = {{2, 2}, {3, 1}, {2, 2, 1}, {1, 2, 3}};
  for (const auto& sizes : size_sets) {
    int total = std::accumulate(sizes.begin(), sizes.end(), 0);
    BigInt expected = cohen::factorial(total);
    for (int s : sizes) expected = expected.div_exact(
        static_cast<std::uint32_t>(cohen::factorial(s).to_int64()));
    CHECK(BigInt(static_cast<long long>(shuffles(sizes).size())) == expected);
    // every shuffle stays increasing on each consecutive position segment
    for (const auto& sh : shuffles(sizes)) {
      int at = 0;
      for (int s : sizes) {
        for (int i = at; i + 1 < at + s; ++i) CHECK(sh[i] < sh[i + 1]);
        at += s;
      }
    }
  }
  CHECK_THROWS_AS(shuffles_over({2, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("shuffle multiset equals division-count multiset") {
  // over one full symbol set: shuffles counted with multiplicity agree
  // with the division counts of the same permutations
  for (int n = 1; n <= 6; ++n) {
    for (int l = 1; l <= n; ++l) {
      std::map<Perm, long long> from_shuffles;
      // compositions of n into l positive parts
      std::vector<int> sizes;
      auto rec = [&](auto&& self, int remaining, int parts) -> void {
        if (parts == 1) {
          sizes.push_back(remaining);
          for (const auto& sh : shuffles(sizes)) ++from_shuffles[sh];
          sizes.pop_back();
          return;
        }
        for (int first = 1; first <= remaining - parts + 1; ++first) {
          sizes.push_back(first);
          self(self, remaining - first, parts - 1);
          sizes.pop_back();
        }
      };
      rec(rec, n, l);

      Perm p(n);
      std::iota(p.begin(), p.end(), 1);
      do {
        long long d = count_divisions(p, l);
        long long got = from_shuffles.count(p) ? from_shuffles.at(p) : 0;
        CHECK(got == d);
      } while (std::next_permutation(p.begin(), p.end()));
    }
  }
}

TEST_CASE("monotonicity: refining a division splits one block") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng() % 6);
    Perm p(n);
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    auto table = division_count_table(p);
    for (int l = 1; l + 1 <= n; ++l)
      if (table[l] > 0) CHECK(table[l + 1] > 0);
  }
}
