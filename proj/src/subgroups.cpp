#include "cohen/subgroups.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <stdexcept>

#include "cohen/expr.hpp"

namespace cohen::subgroups {

namespace {

long long ipow(long long base, std::uint32_t e) {
  long long r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

long long modinv(long long u, long long m) {
  long long t = 0, new_t = 1, r = m, new_r = u % m;
  while (new_r != 0) {
    long long q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("unit expected, no modular inverse");
  return ((t % m) + m) % m;
}

int valuation_of(long long c, long long p) {
  int v = 0;
  while (c % p == 0) {
    c /= p;
    ++v;
  }
  return v;
}

/// Echelonized generating sequence with p-power leading exponents;
/// leading coordinates add under multiplication, so rows reduce any
/// member of their span to the identity.
class Echelon {
public:
  explicit Echelon(const GroupContext& ctx)
      : ctx_(ctx), p_(ctx.mode().p), m_(ctx.mode().modulus()) {}

  Echelon(const GroupContext& ctx, const std::vector<NormalForm>& rows) : Echelon(ctx) {
    for (const auto& r : rows) rows_.emplace(r.coeffs.front().first, r);
  }

  NormalForm sift(NormalForm g) const {
    while (!g.is_identity()) {
      auto [lead, c] = g.coeffs.front();
      auto it = rows_.find(lead);
      if (it == rows_.end()) return g;
      long long row_lead = it->second.coeffs.front().second;  // = p^s
      if (c % row_lead != 0) return g;
      g = multiply(power(it->second, -(c / row_lead), ctx_), g, ctx_);
    }
    return g;
  }

  bool add(NormalForm g) {
    bool changed = false;
    while (!g.is_identity()) {
      auto [lead, c] = g.coeffs.front();
      auto it = rows_.find(lead);
      if (it == rows_.end()) {
        rows_.emplace(lead, normalize(std::move(g)));
        return true;
      }
      long long row_lead = it->second.coeffs.front().second;
      if (c % row_lead == 0) {
        g = multiply(power(it->second, -(c / row_lead), ctx_), g, ctx_);
      } else if (valuation_of(c, p_) < valuation_of(row_lead, p_)) {
        NormalForm old = it->second;
        it->second = normalize(std::move(g));
        changed = true;
        g = std::move(old);
      } else {
        // leading exponents share the p-valuation but the unit parts
        // differ; normalization makes the row lead a pure p-power, so
        // this cannot happen
        throw std::logic_error("echelon reduction stuck");
      }
    }
    return changed;
  }

  std::vector<NormalForm> rows() const {
    std::vector<NormalForm> out;
    out.reserve(rows_.size());
    for (const auto& [lead, nf] : rows_) out.push_back(nf);
    return out;
  }

private:
  const GroupContext& ctx_;
  long long p_;
  long long m_;
  std::map<std::uint32_t, NormalForm> rows_;

  NormalForm normalize(NormalForm g) {
    long long c = g.coeffs.front().second;
    long long unit = c / ipow(p_, valuation_of(c, p_));
    if (unit == 1) return g;
    return power(g, modinv(unit, m_), ctx_);
  }
};

void require_modular(const GroupContext& ctx) {
  if (!ctx.mode().modular())
    throw std::invalid_argument("subgroup machinery requires the modular mode");
}

NormalForm generator_nf(int i, const GroupContext& ctx) {
  return basis_nf(ctx.basis_index({i}));
}

NormalForm conj_by(const NormalForm& h, const NormalForm& u, const GroupContext& ctx) {
  return multiply(multiply(inverse(u, ctx), h, ctx), u, ctx);
}

bool conjugation_closed(const std::vector<NormalForm>& rows, const GroupContext& ctx) {
  Echelon ech(ctx, rows);
  for (const auto& h : rows) {
    for (int i = 1; i <= ctx.n(); ++i) {
      NormalForm x = generator_nf(i, ctx);
      if (!ech.sift(conj_by(h, x, ctx)).is_identity()) return false;
      if (!ech.sift(conj_by(h, inverse(x, ctx), ctx)).is_identity()) return false;
    }
  }
  return true;
}

SubgroupHandle build_closure(const std::vector<NormalForm>& gens, const GroupContext& ctx,
                             bool close_under_conjugation, std::string description) {
  require_modular(ctx);
  const long long m = ctx.mode().modulus();
  Echelon ech(ctx);
  for (const auto& g : gens) ech.add(g);

  bool changed = true;
  while (changed) {
    changed = false;
    auto rows = ech.rows();
    std::vector<NormalForm> jobs;
    for (const auto& h : rows) {
      jobs.push_back(inverse(h, ctx));
      jobs.push_back(power(h, m / h.coeffs.front().second, ctx));  // kills the lead
      if (close_under_conjugation) {
        for (int i = 1; i <= ctx.n(); ++i) {
          NormalForm x = generator_nf(i, ctx);
          jobs.push_back(conj_by(h, x, ctx));
          jobs.push_back(conj_by(h, inverse(x, ctx), ctx));
        }
      }
    }
    for (const auto& a : rows)
      for (const auto& b : rows) {
        jobs.push_back(multiply(a, b, ctx));
        jobs.push_back(commutator(a, b, ctx));
      }
    for (auto& job : jobs)
      if (ech.add(std::move(job))) changed = true;
  }

  SubgroupHandle handle;
  handle.ctx = &ctx;
  handle.sequence = ech.rows();
  handle.description = std::move(description);
  handle.normal =
      close_under_conjugation ? true : conjugation_closed(handle.sequence, ctx);
  return handle;
}

Provenance combine(Provenance a, Provenance b) {
  if (a == Provenance::OverApprox || b == Provenance::OverApprox) return Provenance::OverApprox;
  if (a == Provenance::UnderApprox || b == Provenance::UnderApprox) return Provenance::UnderApprox;
  return Provenance::Exact;
}

bool is_power_of(std::uint32_t k, std::uint32_t p) {
  while (k % p == 0) k /= p;
  return k == 1;
}

bool abelian(const SubgroupHandle& A) {
  for (std::size_t i = 0; i < A.sequence.size(); ++i)
    for (std::size_t j = i + 1; j < A.sequence.size(); ++j)
      if (!commutator(A.sequence[i], A.sequence[j], *A.ctx).is_identity()) return false;
  return true;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Exact: return "exact";
    case Provenance::UnderApprox: return "under-approximation";
    case Provenance::OverApprox: return "over-approximation";
  }
  return "?";
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NonMember: return "non-member";
    case Membership::Inconclusive: return "inconclusive";
  }
  return "?";
}

SubgroupHandle span(const std::vector<NormalForm>& gens, const GroupContext& ctx,
                    std::string description) {
  return build_closure(gens, ctx, false, std::move(description));
}

SubgroupHandle normal_closure(const std::vector<NormalForm>& gens, const GroupContext& ctx,
                              std::string description) {
  return build_closure(gens, ctx, true, std::move(description));
}

SubgroupHandle whole_group(const GroupContext& ctx) {
  require_modular(ctx);
  SubgroupHandle handle;
  handle.ctx = &ctx;
  for (std::uint32_t idx = 0; idx < ctx.basis_size(); ++idx)
    handle.sequence.push_back(basis_nf(idx));
  handle.normal = true;
  handle.description = "K";
  return handle;
}

SubgroupHandle gamma(int k, const GroupContext& ctx) {
  if (k < 1) throw std::invalid_argument("gamma requires k >= 1");
  SubgroupHandle cur = whole_group(ctx);
  cur.description = "gamma_1";
  for (int step = 2; step <= k; ++step) {
    std::vector<NormalForm> gens;
    for (const auto& h : cur.sequence)
      for (int i = 1; i <= ctx.n(); ++i)
        gens.push_back(commutator(h, generator_nf(i, ctx), ctx));
    cur = normal_closure(gens, ctx, "gamma_" + std::to_string(step));
  }
  return cur;
}

SubgroupHandle derived_pair(const SubgroupHandle& A, const SubgroupHandle& B) {
  if (A.ctx != B.ctx) throw std::invalid_argument("derived_pair: context mismatch");
  const GroupContext& ctx = *A.ctx;
  std::vector<NormalForm> gens;
  for (const auto& a : A.sequence)
    for (const auto& b : B.sequence) gens.push_back(commutator(a, b, ctx));
  std::string desc = "[" + A.description + "," + B.description + "]";
  SubgroupHandle out;
  if (A.normal && B.normal) {
    out = normal_closure(gens, ctx, desc);
    out.provenance = combine(A.provenance, B.provenance);
    out.reason = out.provenance == Provenance::Exact ? "" : "approximate factor";
  } else {
    out = span(gens, ctx, desc);
    out.provenance = Provenance::UnderApprox;
    out.reason = "generated by sequence commutators of a non-normal factor";
  }
  return out;
}

SubgroupHandle power_subgroup(const SubgroupHandle& A, long long m) {
  if (m < 1) throw std::invalid_argument("power_subgroup requires m >= 1");
  const GroupContext& ctx = *A.ctx;
  require_modular(ctx);
  std::string desc = A.description + "^" + std::to_string(m);
  if (m == 1 || std::gcd(m, static_cast<long long>(ctx.mode().p)) == 1) {
    // every element is an m-th power when m is prime to p
    SubgroupHandle out = A;
    out.description = std::move(desc);
    return out;
  }
  std::vector<NormalForm> gens;
  gens.reserve(A.sequence.size());
  for (const auto& h : A.sequence) gens.push_back(power(h, m, ctx));
  SubgroupHandle out = A.normal ? normal_closure(gens, ctx, desc) : span(gens, ctx, desc);
  if (A.provenance == Provenance::Exact && abelian(A)) {
    out.provenance = Provenance::Exact;
  } else {
    out.provenance = combine(A.provenance, Provenance::UnderApprox);
    out.reason = "closure of m-th powers of the sequence only";
  }
  return out;
}

SubgroupHandle bn_subgroup(const GroupContext& ctx, std::uint32_t p) {
  require_modular(ctx);
  if (ctx.mode().p != p)
    throw std::invalid_argument("bn_subgroup: prime does not match the context");
  std::vector<NormalForm> gens;
  for (std::uint32_t idx = 0; idx < ctx.basis_size(); ++idx) {
    int w = ctx.weight_of(idx);
    if (w >= 2 && !is_power_of(static_cast<std::uint32_t>(w), p)) gens.push_back(basis_nf(idx));
  }
  SubgroupHandle out = span(gens, ctx, "B_" + std::to_string(ctx.n()));
  out.provenance = Provenance::Exact;
  return out;
}

SubgroupHandle product_span(const std::vector<SubgroupHandle>& subs) {
  if (subs.empty()) throw std::invalid_argument("product_span needs at least one factor");
  const GroupContext& ctx = *subs.front().ctx;
  std::vector<NormalForm> gens;
  std::string desc;
  bool all_normal = true;
  Provenance prov = Provenance::Exact;
  for (const auto& s : subs) {
    if (s.ctx != &ctx) throw std::invalid_argument("product_span: context mismatch");
    gens.insert(gens.end(), s.sequence.begin(), s.sequence.end());
    if (!desc.empty()) desc += " · ";
    desc += s.description;
    all_normal = all_normal && s.normal;
    prov = combine(prov, s.provenance);
  }
  SubgroupHandle out = span(gens, ctx, desc);
  if (!all_normal) {
    out.provenance = Provenance::OverApprox;
    out.reason = "product set with a non-normal factor, over-approximated by the span";
  } else {
    out.provenance = prov;
    if (prov != Provenance::Exact) out.reason = "approximate factor";
  }
  out.factors = subs;
  return out;
}

NormalForm sift(const NormalForm& g, const SubgroupHandle& S) {
  Echelon ech(*S.ctx, S.sequence);
  return ech.sift(g);
}

namespace {

// bounded factorization for product sets with a leading non-normal
// factor: try g = u * rest with u a row power of the non-normal factor
bool witness_factorization(const NormalForm& g, const SubgroupHandle& S, std::string& note) {
  std::vector<const SubgroupHandle*> non_normal, normal_rest;
  for (const auto& f : S.factors)
    (f.normal ? normal_rest : non_normal).push_back(&f);
  if (non_normal.size() != 1) return false;
  const GroupContext& ctx = *S.ctx;

  std::vector<NormalForm> rest_gens;
  for (const auto* f : normal_rest)
    rest_gens.insert(rest_gens.end(), f->sequence.begin(), f->sequence.end());
  SubgroupHandle rest = span(rest_gens, ctx, "normal remainder");
  Echelon rest_ech(ctx, rest.sequence);

  const long long m = ctx.mode().modulus();
  if (rest_ech.sift(g).is_identity()) {
    note = "factorization witness: trivial non-normal part";
    return true;
  }
  for (const auto& row : non_normal.front()->sequence) {
    for (long long e = 1; e < m; ++e) {
      NormalForm u = power(row, e, ctx);
      if (rest_ech.sift(multiply(inverse(u, ctx), g, ctx)).is_identity()) {
        note = "factorization witness: u = " + print_normal_form(u, ctx) +
               " from the non-normal factor";
        return true;
      }
    }
  }
  return false;
}

}  // namespace

MembershipVerdict membership(const NormalForm& g, const SubgroupHandle& S) {
  auto start = std::chrono::steady_clock::now();
  const GroupContext& ctx = *S.ctx;
  MembershipVerdict v;
  v.element = print_normal_form(g, ctx);
  v.subgroup = S.description + " (" + to_string(S.provenance) + ")";

  if (g.is_identity()) {
    v.status = Membership::Member;
    return v;
  }

  NormalForm residue = sift(g, S);
  if (residue.is_identity()) {
    switch (S.provenance) {
      case Provenance::Exact:
        v.status = Membership::Member;
        break;
      case Provenance::UnderApprox:
        v.status = Membership::Member;
        v.note = "member of an under-approximating subgroup, hence of the target";
        break;
      case Provenance::OverApprox: {
        std::string note;
        if (witness_factorization(g, S, note)) {
          v.status = Membership::Member;
          v.note = note;
        } else {
          v.status = Membership::Inconclusive;
          v.note = "member of the generated subgroup; product-set factorization not found";
        }
        break;
      }
    }
  } else {
    switch (S.provenance) {
      case Provenance::Exact:
        v.status = Membership::NonMember;
        break;
      case Provenance::UnderApprox:
        v.status = Membership::Inconclusive;
        v.note = "residue " + print_normal_form(residue, ctx) + " in an under-approximation";
        break;
      case Provenance::OverApprox:
        v.status = Membership::NonMember;
        v.note = "absent even from the over-approximating subgroup";
        break;
    }
  }
  v.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return v;
}

namespace {

words::ExprPtr product_word(int from, int to) {
  std::vector<words::ExprPtr> fs;
  for (int i = from; i <= to; ++i) fs.push_back(words::make_generator(i));
  if (fs.size() == 1) return fs[0];
  return words::make_product(std::move(fs));
}

void check_bounds(const ClaimParams& q, std::uint32_t max_power) {
  if (q.n < 1 || q.n > 4) throw std::invalid_argument("claims support 1 <= n <= 4");
  long long pw = 1;
  for (std::uint32_t i = 0; i < max_power; ++i) pw *= q.p;
  if (pw > 125) throw std::invalid_argument("claims support p^" + std::to_string(max_power) +
                                            " <= 125");
}

MembershipVerdict decorated(MembershipVerdict v, std::string claim,
                            std::vector<std::pair<std::string, std::string>> params,
                            const std::string& extra_note) {
  v.claim = std::move(claim);
  v.parameters = std::move(params);
  if (!extra_note.empty()) v.note = v.note.empty() ? extra_note : v.note + "; " + extra_note;
  return v;
}

}  // namespace

void validate_claim_params(const std::string& claim_id, const ClaimParams& q) {
  if (claim_id == "lemma25") {
    check_bounds(q, q.r);
    if (q.l < 2 || q.l > q.n) throw std::invalid_argument("lemma25 requires 2 <= l <= n");
  } else if (claim_id == "lemma26") {
    if (q.r < 2) throw std::invalid_argument("lemma26 requires r > 1");
    check_bounds(q, q.r);
  } else if (claim_id == "prop27_np2" || claim_id == "prop27_np1" || claim_id == "cor28") {
    if (q.r < 2) throw std::invalid_argument(claim_id + " requires r > 1");
    check_bounds(q, q.r + 1);
  } else if (claim_id == "remark_r1") {
    ClaimParams q1 = q;
    q1.r = 1;
    check_bounds(q1, 3);
  } else {
    throw std::invalid_argument("unknown claim id: " + claim_id);
  }
}

std::vector<MembershipVerdict> verify_claims(const std::string& claim_id,
                                             const ClaimParams& q) {
  validate_claim_params(claim_id, q);
  std::vector<MembershipVerdict> out;
  auto param_list = [&](bool with_l) {
    std::vector<std::pair<std::string, std::string>> ps = {
        {"n", std::to_string(q.n)}, {"p", std::to_string(q.p)}, {"r", std::to_string(q.r)}};
    if (with_l) ps.emplace_back("l", std::to_string(q.l));
    return ps;
  };

  if (claim_id == "lemma25") {
    auto ctx = make_context(q.n + 1, CoeffMode::mod_prime_power(q.p, q.r));
    words::ExprPtr elem_expr =
        words::make_engel(words::make_generator(q.n + 1), product_word(1, q.n), q.l);
    NormalForm elem = collect(*elem_expr, *ctx);
    SubgroupHandle g2 = gamma(2, *ctx);
    long long fact = factorial(static_cast<std::uint32_t>(q.l - 1)).to_int64();
    SubgroupHandle target =
        product_span({power_subgroup(g2, fact), derived_pair(g2, g2)});
    std::string note = elem.is_identity() ? "element collects to the identity" : "";
    MembershipVerdict v = membership(elem, target);
    v.element = words::print(elem_expr) + " = " + v.element;
    out.push_back(decorated(std::move(v), "lemma25", param_list(true), note));
    return out;
  }

  if (claim_id == "lemma26") {
    auto ctx = make_context(q.n, CoeffMode::mod_prime_power(q.p, q.r));
    long long pr = ipow(q.p, q.r);
    words::ExprPtr elem_expr = words::make_power(product_word(1, q.n), BigInt(pr));
    NormalForm elem = collect(*elem_expr, *ctx);
    SubgroupHandle g2 = gamma(2, *ctx);
    SubgroupHandle target =
        product_span({power_subgroup(g2, ipow(q.p, q.r - 1)), derived_pair(g2, g2)});
    std::string note = elem.is_identity() ? "element collects to the identity" : "";
    MembershipVerdict v = membership(elem, target);
    v.element = words::print(elem_expr) + " = " + v.element;
    out.push_back(decorated(std::move(v), "lemma26", param_list(false), note));
    return out;
  }

  if (claim_id == "prop27_np2" || claim_id == "prop27_np1" || claim_id == "cor28") {
    const bool corollary = claim_id == "cor28";
    auto ctx = make_context(corollary ? q.n : q.n + 1, CoeffMode::mod_prime_power(q.p, q.r));
    long long prp = ipow(q.p, q.r + 1);

    NormalForm elem;
    std::string elem_desc;
    if (corollary) {
      words::ExprPtr elem_expr = words::make_power(product_word(1, q.n), BigInt(prp));
      elem = collect(*elem_expr, *ctx);
      elem_desc = words::print(elem_expr);
    } else {
      // gamma = ((x1..xn)^{p^{r+1}})^{-1} (x1..x_{n+1})^{p^{r+1}}
      words::ExprPtr low_expr = words::make_power(product_word(1, q.n), BigInt(prp));
      words::ExprPtr high_expr = words::make_power(product_word(1, q.n + 1), BigInt(prp));
      NormalForm low = collect(*low_expr, *ctx);
      NormalForm high = collect(*high_expr, *ctx);
      elem = multiply(inverse(low, *ctx), high, *ctx);
      elem_desc = "(" + words::print(low_expr) + ")^-1 " + words::print(high_expr);
    }

    SubgroupHandle g2 = gamma(2, *ctx);
    SubgroupHandle g22 = derived_pair(g2, g2);
    SubgroupHandle target;
    if (claim_id == "prop27_np1") {
      SubgroupHandle bn = bn_subgroup(*ctx, q.p);
      target = product_span(
          {bn, derived_pair(bn, power_subgroup(g2, q.p)), derived_pair(bn, g22)});
    } else {
      target = product_span({derived_pair(g22, g22),
                             derived_pair(power_subgroup(g2, q.p), g22),
                             power_subgroup(g22, q.p)});
    }
    std::string note = elem.is_identity() ? "element collects to the identity" : "";
    MembershipVerdict v = membership(elem, target);
    v.element = elem_desc + " = " + v.element;
    out.push_back(decorated(std::move(v), claim_id, param_list(false), note));
    return out;
  }

  if (claim_id == "remark_r1") {
    auto ctx = make_context(q.n, CoeffMode::mod_prime_power(q.p, 1));
    words::ExprPtr elem_expr = words::make_power(product_word(1, q.n), BigInt(ipow(q.p, 3)));
    NormalForm elem = collect(*elem_expr, *ctx);
    SubgroupHandle g2 = gamma(2, *ctx);
    SubgroupHandle g22 = derived_pair(g2, g2);
    SubgroupHandle target = derived_pair(g22, g22);
    target.description = "[[gamma_2,gamma_2],[gamma_2,gamma_2]]";
    std::string note = elem.is_identity() ? "element collects to the identity" : "";
    MembershipVerdict v = membership(elem, target);
    v.element = words::print(elem_expr) + " = " + v.element;
    out.push_back(decorated(std::move(v), "remark_r1",
                            {{"n", std::to_string(q.n)}, {"p", std::to_string(q.p)},
                             {"r", "1"}},
                            note));
    return out;
  }

  throw std::invalid_argument("unknown claim id: " + claim_id);
}

}  // namespace cohen::subgroups
