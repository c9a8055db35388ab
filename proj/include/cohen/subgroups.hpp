#ifndef COHEN_SUBGROUPS_HPP
#define COHEN_SUBGROUPS_HPP

#include <string>
#include <vector>

#include "cohen/collect.hpp"

namespace cohen::subgroups {

/// How the computed sequence relates to the named target:
///  - Exact: the sequence spans exactly the target subgroup
///  - UnderApprox: spans a subgroup contained in the target, so Member
///    verdicts stay conclusive
///  - OverApprox: spans a subgroup containing the target set (product
///    sets with a non-normal factor), so NonMember verdicts stay
///    conclusive and Member needs a witness factorization
enum class Provenance { Exact, UnderApprox, OverApprox };

std::string to_string(Provenance p);

/// Induced polycyclic generating sequence: leading basis indexes are
/// strictly increasing and every leading exponent is a power of p.
/// Modular contexts only.
struct SubgroupHandle {
  const GroupContext* ctx = nullptr;
  std::vector<NormalForm> sequence;
  Provenance provenance = Provenance::Exact;
  std::string reason;  // empty for Exact
  bool normal = false;
  std::string description;
  std::vector<SubgroupHandle> factors;  // retained by product_span for witness search

  bool trivial() const { return sequence.empty(); }
};

enum class Membership { Member, NonMember, Inconclusive };

std::string to_string(Membership m);

struct MembershipVerdict {
  std::string claim;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string element;
  std::string subgroup;
  Membership status = Membership::Inconclusive;
  std::string note;
  long long elapsed_ms = 0;
};

SubgroupHandle span(const std::vector<NormalForm>& gens, const GroupContext& ctx,
                    std::string description = "span");
SubgroupHandle normal_closure(const std::vector<NormalForm>& gens, const GroupContext& ctx,
                              std::string description = "ncl");
SubgroupHandle whole_group(const GroupContext& ctx);

/// Lower central series term: gamma(1) is the whole group, gamma(k+1)
/// the normal closure of [gamma(k) sequence, generators].
SubgroupHandle gamma(int k, const GroupContext& ctx);

/// [A, B]: exact as a normal closure when both factors are normal,
/// otherwise the under-approximating span of sequence commutators.
SubgroupHandle derived_pair(const SubgroupHandle& A, const SubgroupHandle& B);

/// Verbal power subgroup A^m, under-approximated by closures of m-th
/// powers of the sequence except in the cases where that is exact
/// (m = 1, m prime to p, or A abelian).
SubgroupHandle power_subgroup(const SubgroupHandle& A, long long m);

/// Subgroup generated by all distinct-entry brackets whose weight is
/// not a power of p (weight 1 = p^0 included in the exclusion). Plain
/// span: this subgroup is not normal.
SubgroupHandle bn_subgroup(const GroupContext& ctx, std::uint32_t p);

/// Span of the union of the factor sequences. All factors normal: the
/// exact product subgroup. Any non-normal factor: over-approximates the
/// product set, recorded in the provenance.
SubgroupHandle product_span(const std::vector<SubgroupHandle>& subs);

/// Residue of g after reduction by the sequence; identity means g lies
/// in the sequence span.
NormalForm sift(const NormalForm& g, const SubgroupHandle& S);

MembershipVerdict membership(const NormalForm& g, const SubgroupHandle& S);

struct ClaimParams {
  int n = 2;
  std::uint32_t p = 3;
  std::uint32_t r = 2;
  int l = 2;
};

/// Throws std::invalid_argument when the parameters fall outside the
/// supported desk-scale ranges of the claim.
void validate_claim_params(const std::string& claim_id, const ClaimParams& params);

/// Claim ids: lemma25, lemma26, prop27_np2, prop27_np1, cor28, remark_r1.
std::vector<MembershipVerdict> verify_claims(const std::string& claim_id,
                                             const ClaimParams& params);

}  // namespace cohen::subgroups

#endif
