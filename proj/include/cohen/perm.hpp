#ifndef COHEN_PERM_HPP
#define COHEN_PERM_HPP

#include <vector>

#include "cohen/bigint.hpp"

namespace cohen::perm {

/// A permutation of a finite ordered symbol set, stored as its image
/// sequence. Entries are pairwise distinct but need not be 1..n: any
/// subset of a larger index set is allowed, ordered by value.
using Perm = std::vector<int>;

struct PermStats {
  Perm perm;
  int l = 0;
  long long d = 0;  // number of divisions into l increasing blocks
};

/// Number of ways to cut p into exactly l nonempty contiguous blocks,
/// each strictly increasing. Dynamic program, O(l * n^2).
long long count_divisions(const Perm& p, int l);

/// Division counts for every block count at once: entry l of the result
/// is count_divisions(p, l), entry 0 is unused.
std::vector<long long> division_count_table(const Perm& p);

/// All permutations of {1..n} with at least one division into l blocks,
/// each with its division count, in lexicographic order.
std::vector<PermStats> sigma_ln(int n, int l);

/// The subset of sigma_ln(n, l) whose first entry is i.
std::vector<PermStats> sigma_ln_at(int n, int l, int i);

/// Stirling number of the second kind; 0 outside the triangle.
BigInt stirling2(int n, int l);

/// All interleavings of the canonical increasing blocks of the given
/// sizes over symbols (default 1..sum): each block keeps its internal
/// order. Count equals the multinomial coefficient.
std::vector<Perm> shuffles(const std::vector<int>& block_sizes);
std::vector<Perm> shuffles_over(const std::vector<int>& block_sizes,
                                const std::vector<int>& symbols);

}  // namespace cohen::perm

#endif
