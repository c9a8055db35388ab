#include "cohen/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cohen::perm {

namespace {

// ways[m][j]: divisions of the length-j prefix into m increasing blocks
std::vector<std::vector<long long>> division_dp(const Perm& p, int lmax) {
  const int n = static_cast<int>(p.size());
  std::vector<std::vector<long long>> ways(lmax + 1, std::vector<long long>(n + 1, 0));
  ways[0][0] = 1;
  for (int m = 1; m <= lmax; ++m) {
    for (int j = m; j <= n; ++j) {
      // block (k..j], scanned right to left while it stays increasing
      for (int k = j - 1; k >= 0; --k) {
        if (k < j - 1 && p[k] > p[k + 1]) break;
        ways[m][j] += ways[m - 1][k];
      }
    }
  }
  return ways;
}

}  // namespace

long long count_divisions(const Perm& p, int l) {
  const int n = static_cast<int>(p.size());
  if (n == 0) throw std::invalid_argument("count_divisions: empty permutation");
  if (l < 1 || l > n) throw std::invalid_argument("count_divisions: l out of range");
  return division_dp(p, l)[l][n];
}

std::vector<long long> division_count_table(const Perm& p) {
  const int n = static_cast<int>(p.size());
  if (n == 0) throw std::invalid_argument("division_count_table: empty permutation");
  auto ways = division_dp(p, n);
  std::vector<long long> out(n + 1, 0);
  for (int l = 1; l <= n; ++l) out[l] = ways[l][n];
  return out;
}

std::vector<PermStats> sigma_ln(int n, int l) {
  if (n < 1) throw std::invalid_argument("sigma_ln: n must be >= 1");
  if (l < 1 || l > n) throw std::invalid_argument("sigma_ln: l out of range");
  Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<PermStats> out;
  do {
    long long d = count_divisions(p, l);
    if (d > 0) out.push_back({p, l, d});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<PermStats> sigma_ln_at(int n, int l, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("sigma_ln_at: i out of range");
  std::vector<PermStats> out;
  for (auto& s : sigma_ln(n, l))
    if (s.perm.front() == i) out.push_back(std::move(s));
  return out;
}

BigInt stirling2(int n, int l) {
  if (n < 0 || l < 0) return BigInt(0);
  if (n == 0 && l == 0) return BigInt(1);
  if (l == 0 || l > n) return BigInt(0);
  // S(n,l) = l*S(n-1,l) + S(n-1,l-1)
  std::vector<BigInt> row(l + 1, BigInt(0));
  row[0] = BigInt(1);  // S(0,0)
  for (int m = 1; m <= n; ++m) {
    for (int k = std::min(m, l); k >= 1; --k)
      row[k] = BigInt(k) * row[k] + row[k - 1];
    row[0] = BigInt(0);
  }
  return row[l];
}

std::vector<Perm> shuffles_over(const std::vector<int>& block_sizes,
                                const std::vector<int>& symbols) {
  long long total = 0;
  for (int s : block_sizes) {
    if (s < 1) throw std::invalid_argument("shuffles: block sizes must be >= 1");
    total += s;
  }
  if (total != static_cast<long long>(symbols.size()))
    throw std::invalid_argument("shuffles: block sizes do not sum to the symbol count");

  std::vector<int> sorted = symbols;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("shuffles: symbols must be distinct");

  // a shuffle rearranges the increasing word while staying increasing on
  // each consecutive position segment; equivalently it is the
  // concatenation of the sorted blocks of an ordered set partition with
  // the given sizes, and each permutation occurs once per division
  std::vector<Perm> out;
  Perm cur;
  cur.reserve(sorted.size());
  std::vector<bool> used(sorted.size(), false);
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == block_sizes.size()) {
      out.push_back(cur);
      return;
    }
    // choose the next block: an increasing selection of unused symbols
    int size = block_sizes[depth];
    std::vector<int> pick;
    auto choose = [&](auto&& chooser, std::size_t from) -> void {
      if (static_cast<int>(pick.size()) == size) {
        for (int v : pick) cur.push_back(v);
        self(self, depth + 1);
        cur.resize(cur.size() - pick.size());
        return;
      }
      for (std::size_t i = from; i < sorted.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        pick.push_back(sorted[i]);
        chooser(chooser, i + 1);
        pick.pop_back();
        used[i] = false;
      }
    };
    choose(choose, 0);
  };
  rec(rec, 0);
  return out;
}

std::vector<Perm> shuffles(const std::vector<int>& block_sizes) {
  long long total = 0;
  for (int s : block_sizes) total += std::max(s, 0);
  std::vector<int> symbols(total);
  std::iota(symbols.begin(), symbols.end(), 1);
  return shuffles_over(block_sizes, symbols);
}

}  // namespace cohen::perm
