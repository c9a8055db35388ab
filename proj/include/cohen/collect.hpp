#ifndef COHEN_COLLECT_HPP
#define COHEN_COLLECT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cohen/algebra.hpp"
#include "cohen/expr.hpp"

namespace cohen {

/// Left-normalized bracket [x_{e1},...,x_{ek}] with pairwise-distinct
/// entries. Canonical shape: for weight >= 2 the first entry is the
/// minimum and the tail is an arbitrary permutation of the rest, giving
/// (k-1)! basis elements per k-subset.
struct BasisCommutator {
  std::vector<int> entries;

  int weight() const { return static_cast<int>(entries.size()); }
  std::string to_string() const;
  words::ExprPtr to_expr() const;
  bool operator==(const BasisCommutator& o) const { return entries == o.entries; }
};

/// Exponent vector over the ordered basis, interpreted as the product
/// of basis powers taken in basis order. Entries are nonzero; in
/// modular mode they lie in [0, p^r).
struct NormalForm {
  std::vector<std::pair<std::uint32_t, long long>> coeffs;

  bool is_identity() const { return coeffs.empty(); }
  long long exponent_of(std::uint32_t basis_index) const;
  bool operator==(const NormalForm& o) const { return coeffs == o.coeffs; }
  bool operator!=(const NormalForm& o) const { return !(*this == o); }
  bool operator<(const NormalForm& o) const { return coeffs < o.coeffs; }
};

struct ConsistencyReport {
  bool passed = true;
  int trials = 0;
  int checks_run = 0;
  std::string witness;  // first failing instance, empty when passed
  std::vector<std::string> notes;
  long long elapsed_ms = 0;
};

/// All parameters and caches of one group: the rank n, the coefficient
/// mode, the nilpotency class bound, the ordered basis, and the
/// memoized structure constants. Read-mostly and safe to share across
/// threads; the memo tables are internally locked and inserts are
/// idempotent.
class GroupContext {
public:
  GroupContext(int n, CoeffMode mode, int class_bound);

  GroupContext(const GroupContext&) = delete;
  GroupContext& operator=(const GroupContext&) = delete;

  int n() const { return n_; }
  const CoeffMode& mode() const { return mode_; }
  int class_bound() const { return class_bound_; }

  const std::vector<BasisCommutator>& basis() const { return basis_; }
  std::size_t basis_size() const { return basis_.size(); }
  const BasisCommutator& basis_at(std::uint32_t idx) const { return basis_[idx]; }
  int weight_of(std::uint32_t idx) const { return basis_[idx].weight(); }

  /// Index of a canonical-shape bracket; throws when not canonical.
  std::uint32_t basis_index(const std::vector<int>& entries) const;

  /// Hash pinning (n, mode, class bound, basis order) for cache files.
  std::string basis_order_hash() const;

  const ReducedAlgebra& algebra() const { return *algebra_; }

  /// Sparse multilinear part of the image of basis element idx: the
  /// image is exactly 1 + lie_part, and lie_part squares to zero.
  const std::vector<std::pair<std::uint32_t, long long>>& lie_part(std::uint32_t idx) const;

  std::uint32_t principal_monomial(std::uint32_t idx) const { return principal_[idx]; }

  // structure-constant pair cache, the unit the cache file serializes
  std::optional<NormalForm> cached_pair(std::uint32_t i, std::uint32_t j) const;
  void store_pair(std::uint32_t i, std::uint32_t j, NormalForm nf) const;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, NormalForm>> pair_cache_snapshot() const;

  // conjugation memo b_j^(b_i^e), internal accelerator
  std::optional<NormalForm> cached_conjugate(std::uint32_t j, std::uint32_t i, long long e) const;
  void store_conjugate(std::uint32_t j, std::uint32_t i, long long e, NormalForm nf) const;

  /// Test hook: replaces one structure constant and drops derived memo
  /// entries, so consistency_check can demonstrate fault detection.
  void override_structure_constant(std::uint32_t i, std::uint32_t j, NormalForm nf) const;

private:
  int n_;
  CoeffMode mode_;
  int class_bound_;
  std::unique_ptr<MonomialTable> monomials_;
  std::unique_ptr<ReducedAlgebra> algebra_;
  std::vector<BasisCommutator> basis_;
  std::map<std::vector<int>, std::uint32_t> index_of_entries_;
  std::vector<std::uint32_t> principal_;

  mutable std::shared_mutex mutex_;
  mutable std::vector<std::optional<std::vector<std::pair<std::uint32_t, long long>>>> lie_;
  mutable std::map<std::uint64_t, NormalForm> pairs_;
  mutable std::map<std::tuple<std::uint32_t, std::uint32_t, long long>, NormalForm> conj_;
};

using ContextPtr = std::shared_ptr<GroupContext>;

/// class_bound 0 means the natural class, which equals n.
ContextPtr make_context(int n, CoeffMode mode, int class_bound = 0);

NormalForm identity_nf();
NormalForm basis_nf(std::uint32_t idx);

/// Canonical form of the element denoted by the word, computed by
/// collection over memoized structure constants.
NormalForm collect(const words::Expr& e, const GroupContext& ctx);
inline NormalForm collect(const words::ExprPtr& e, const GroupContext& ctx) {
  return collect(*e, ctx);
}

/// Same element evaluated through the reduced-algebra representation
/// and read off coordinate by coordinate. Independent of the collection
/// path; used for cross-validation and to seed structure constants.
NormalForm collect_via_representation(const words::Expr& e, const GroupContext& ctx);
inline NormalForm collect_via_representation(const words::ExprPtr& e, const GroupContext& ctx) {
  return collect_via_representation(*e, ctx);
}

NormalForm multiply(const NormalForm& a, const NormalForm& b, const GroupContext& ctx);
NormalForm inverse(const NormalForm& a, const GroupContext& ctx);
NormalForm power(const NormalForm& a, long long k, const GroupContext& ctx);
NormalForm power(const NormalForm& a, const BigInt& k, const GroupContext& ctx);
NormalForm commutator(const NormalForm& a, const NormalForm& b, const GroupContext& ctx);

/// Normal form of [b_i, b_j]; memoized, and the payload of cache files.
NormalForm structure_constant(std::uint32_t i, std::uint32_t j, const GroupContext& ctx);

std::string print_normal_form(const NormalForm& nf, const GroupContext& ctx);

/// Validates the presentation behind the collection rules: randomized
/// associativity, basis torsion in modular mode, and relator absorption
/// for repeated-entry brackets and generator p^r-th powers.
ConsistencyReport consistency_check(const GroupContext& ctx, int trials,
                                    std::uint64_t seed = 0x5EEDC0DEULL);

}  // namespace cohen

#endif
