#include "cohen/collect.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cohen/expr_random.hpp"

namespace cohen {

namespace {

std::uint64_t pair_key(std::uint32_t i, std::uint32_t j) {
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

}  // namespace

std::string BasisCommutator::to_string() const {
  if (entries.size() == 1) return "x" + std::to_string(entries[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ',';
    s += "x" + std::to_string(entries[i]);
  }
  return s + "]";
}

words::ExprPtr BasisCommutator::to_expr() const {
  words::ExprPtr acc = words::make_generator(entries[0]);
  for (std::size_t i = 1; i < entries.size(); ++i)
    acc = words::make_bracket(acc, words::make_generator(entries[i]));
  return acc;
}

long long NormalForm::exponent_of(std::uint32_t basis_index) const {
  auto it = std::lower_bound(coeffs.begin(), coeffs.end(), basis_index,
                             [](const auto& c, std::uint32_t idx) { return c.first < idx; });
  if (it == coeffs.end() || it->first != basis_index) return 0;
  return it->second;
}

GroupContext::GroupContext(int n, CoeffMode mode, int class_bound)
    : n_(n), mode_(mode), class_bound_(class_bound) {
  if (n < 1 || n > 7) throw std::invalid_argument("context rank must lie in 1..7");
  if (class_bound < 1 || class_bound > n)
    throw std::invalid_argument("class bound must lie in 1..n");

  monomials_ = std::make_unique<MonomialTable>(n, class_bound);
  algebra_ = std::make_unique<ReducedAlgebra>(monomials_.get(), mode);

  // weight ascending, subset lex ascending, tail-permutation lex ascending
  for (int k = 1; k <= class_bound; ++k) {
    std::vector<int> subset(k);
    std::iota(subset.begin(), subset.end(), 1);
    for (;;) {
      if (k == 1) {
        basis_.push_back({{subset[0]}});
      } else {
        std::vector<int> tail(subset.begin() + 1, subset.end());
        do {
          std::vector<int> entries = {subset[0]};
          entries.insert(entries.end(), tail.begin(), tail.end());
          basis_.push_back({std::move(entries)});
        } while (std::next_permutation(tail.begin(), tail.end()));
      }
      // next k-combination of {1..n} in lex order
      int i = k - 1;
      while (i >= 0 && subset[i] == n - (k - 1 - i)) --i;
      if (i < 0) break;
      ++subset[i];
      for (int t = i + 1; t < k; ++t) subset[t] = subset[t - 1] + 1;
    }
  }

  for (std::uint32_t idx = 0; idx < basis_.size(); ++idx) {
    index_of_entries_.emplace(basis_[idx].entries, idx);
    std::vector<std::uint8_t> letters(basis_[idx].entries.begin(), basis_[idx].entries.end());
    std::int32_t mono = monomials_->index_of(letters);
    if (mono < 0) throw std::logic_error("basis element without principal monomial");
    principal_.push_back(static_cast<std::uint32_t>(mono));
  }
  lie_.resize(basis_.size());
}

std::uint32_t GroupContext::basis_index(const std::vector<int>& entries) const {
  auto it = index_of_entries_.find(entries);
  if (it == index_of_entries_.end())
    throw std::invalid_argument("entries are not a canonical basis commutator");
  return it->second;
}

std::string GroupContext::basis_order_hash() const {
  std::string text = "n=" + std::to_string(n_) + "|mode=" + mode_.to_string() +
                     "|class=" + std::to_string(class_bound_);
  for (const auto& b : basis_) text += "|" + b.to_string();
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

const std::vector<std::pair<std::uint32_t, long long>>& GroupContext::lie_part(
    std::uint32_t idx) const {
  {
    std::shared_lock lock(mutex_);
    if (lie_[idx]) return *lie_[idx];
  }
  std::vector<std::pair<std::uint32_t, long long>> out;
  const auto& entries = basis_[idx].entries;
  if (entries.size() == 1) {
    out.emplace_back(monomials_->letter_index(entries[0]), 1);
  } else {
    std::vector<int> prefix(entries.begin(), entries.end() - 1);
    const auto& lp = lie_part(basis_index(prefix));
    std::uint32_t last = monomials_->letter_index(entries.back());
    // [L, X] = L X - X L in the associative ring
    std::map<std::uint32_t, long long> acc;
    for (const auto& [mono, c] : lp) {
      std::int32_t right = monomials_->concat(mono, last);
      if (right >= 0) acc[right] += c;
      std::int32_t left = monomials_->concat(last, mono);
      if (left >= 0) acc[left] -= c;
    }
    for (const auto& [mono, c] : acc) {
      long long v = algebra_->canon_coeff(c);
      if (v != 0) out.emplace_back(mono, v);
    }
  }
  // the min-first monomial carries coefficient exactly 1; everything in
  // normal-form extraction rests on this triangularity
  bool principal_ok = false;
  for (const auto& [mono, c] : out)
    if (mono == principal_[idx]) principal_ok = algebra_->canon_coeff(c) == 1;
  if (!principal_ok) throw std::logic_error("basis image lost its principal coefficient");

  std::unique_lock lock(mutex_);
  if (!lie_[idx]) lie_[idx] = std::move(out);
  return *lie_[idx];
}

std::optional<NormalForm> GroupContext::cached_pair(std::uint32_t i, std::uint32_t j) const {
  std::shared_lock lock(mutex_);
  auto it = pairs_.find(pair_key(i, j));
  if (it == pairs_.end()) return std::nullopt;
  return it->second;
}

void GroupContext::store_pair(std::uint32_t i, std::uint32_t j, NormalForm nf) const {
  std::unique_lock lock(mutex_);
  pairs_.emplace(pair_key(i, j), std::move(nf));
}

std::vector<std::tuple<std::uint32_t, std::uint32_t, NormalForm>>
GroupContext::pair_cache_snapshot() const {
  std::shared_lock lock(mutex_);
  std::vector<std::tuple<std::uint32_t, std::uint32_t, NormalForm>> out;
  out.reserve(pairs_.size());
  for (const auto& [key, nf] : pairs_)
    out.emplace_back(static_cast<std::uint32_t>(key >> 32),
                     static_cast<std::uint32_t>(key & 0xffffffffu), nf);
  return out;
}

std::optional<NormalForm> GroupContext::cached_conjugate(std::uint32_t j, std::uint32_t i,
                                                         long long e) const {
  std::shared_lock lock(mutex_);
  auto it = conj_.find({j, i, e});
  if (it == conj_.end()) return std::nullopt;
  return it->second;
}

void GroupContext::store_conjugate(std::uint32_t j, std::uint32_t i, long long e,
                                   NormalForm nf) const {
  std::unique_lock lock(mutex_);
  conj_.emplace(std::make_tuple(j, i, e), std::move(nf));
}

void GroupContext::override_structure_constant(std::uint32_t i, std::uint32_t j,
                                               NormalForm nf) const {
  std::unique_lock lock(mutex_);
  pairs_[pair_key(i, j)] = std::move(nf);
  conj_.clear();
}

ContextPtr make_context(int n, CoeffMode mode, int class_bound) {
  if (class_bound == 0) class_bound = n;
  return std::make_shared<GroupContext>(n, mode, class_bound);
}

NormalForm identity_nf() { return {}; }

NormalForm basis_nf(std::uint32_t idx) {
  NormalForm nf;
  nf.coeffs.emplace_back(idx, 1);
  return nf;
}

// ---------------------------------------------------------------------------
// representation route: evaluate in the reduced algebra, then peel the
// exponents off the dense value in basis order

namespace {

NormalForm extract_normal_form(ReducedAlgebra::Elem m, const GroupContext& ctx) {
  const ReducedAlgebra& alg = ctx.algebra();
  NormalForm out;
  for (std::uint32_t idx = 0; idx < ctx.basis_size(); ++idx) {
    long long e = alg.canon_coeff(m[ctx.principal_monomial(idx)]);
    if (e == 0) continue;
    out.coeffs.emplace_back(idx, e);
    // strip the leading factor: (1 + L)^-e = 1 - e L since L^2 = 0
    ReducedAlgebra::Elem f = alg.one();
    for (const auto& [mono, c] : ctx.lie_part(idx))
      f[mono] = alg.canon_coeff(checked_neg(checked_mul(e, c)));
    m = alg.mul(f, m);
  }
  if (!alg.is_one(m))
    throw std::logic_error("normal-form extraction left a residue outside the basis span");
  return out;
}

ReducedAlgebra::Elem one_plus_scaled_lie(std::uint32_t idx, long long scale,
                                         const GroupContext& ctx) {
  const ReducedAlgebra& alg = ctx.algebra();
  ReducedAlgebra::Elem f = alg.one();
  for (const auto& [mono, c] : ctx.lie_part(idx))
    f[mono] = alg.canon_coeff(checked_mul(scale, c));
  return f;
}

}  // namespace

NormalForm collect_via_representation(const words::Expr& e, const GroupContext& ctx) {
  return extract_normal_form(ctx.algebra().evaluate(e), ctx);
}

// ---------------------------------------------------------------------------
// collection route: group operations on normal forms, driven by memoized
// structure constants

namespace {

NormalForm mul_impl(const NormalForm& a, const NormalForm& b, const GroupContext& ctx);
NormalForm pow_impl(const NormalForm& a, long long k, const GroupContext& ctx);

// [b_j, b_i^e] through the representation; e = 1 lands in the pair cache
NormalForm sc_power(std::uint32_t j, std::uint32_t i, long long e, const GroupContext& ctx) {
  if (e == 1) {
    if (auto hit = ctx.cached_pair(j, i)) return *hit;
  }
  const ReducedAlgebra& alg = ctx.algebra();
  ReducedAlgebra::Elem u = one_plus_scaled_lie(j, 1, ctx);
  ReducedAlgebra::Elem v = one_plus_scaled_lie(i, e, ctx);
  NormalForm nf = extract_normal_form(alg.commutator(u, v), ctx);
  if (e == 1) ctx.store_pair(j, i, nf);
  return nf;
}

// b_j conjugated by b_i^e; support stays strictly above i
NormalForm conj_single(std::uint32_t j, std::uint32_t i, long long e, const GroupContext& ctx) {
  if (ctx.weight_of(j) + ctx.weight_of(i) > ctx.class_bound()) return basis_nf(j);
  if (auto hit = ctx.cached_conjugate(j, i, e)) return *hit;
  NormalForm z = mul_impl(basis_nf(j), sc_power(j, i, e, ctx), ctx);
  ctx.store_conjugate(j, i, e, z);
  return z;
}

NormalForm conj_letters(const std::vector<std::pair<std::uint32_t, long long>>& letters,
                        std::uint32_t i, long long e, const GroupContext& ctx) {
  NormalForm out;
  for (const auto& [j, c] : letters)
    out = mul_impl(out, pow_impl(conj_single(j, i, e, ctx), c, ctx), ctx);
  return out;
}

// r <- r * b_j^e
void rmul(NormalForm& r, std::uint32_t j, long long e, const GroupContext& ctx) {
  if (j >= ctx.basis_size())
    throw std::out_of_range("normal form refers to a basis index outside this context");
  e = ctx.mode().canon(e);
  if (e == 0) return;

  auto split = std::upper_bound(r.coeffs.begin(), r.coeffs.end(), j,
                                [](std::uint32_t idx, const auto& c) { return idx < c.first; });
  std::vector<std::pair<std::uint32_t, long long>> tail(split, r.coeffs.end());
  r.coeffs.erase(split, r.coeffs.end());

  if (!r.coeffs.empty() && r.coeffs.back().first == j) {
    long long merged = ctx.mode().canon(checked_add(r.coeffs.back().second, e));
    if (merged == 0)
      r.coeffs.pop_back();
    else
      r.coeffs.back().second = merged;
  } else {
    r.coeffs.emplace_back(j, e);
  }

  if (tail.empty()) return;
  NormalForm moved = conj_letters(tail, j, e, ctx);
  if (!moved.coeffs.empty() && moved.coeffs.front().first <= j)
    throw std::logic_error("collection produced an out-of-order tail");
  for (const auto& c : moved.coeffs) r.coeffs.push_back(c);
}

NormalForm mul_impl(const NormalForm& a, const NormalForm& b, const GroupContext& ctx) {
  NormalForm r = a;
  for (const auto& [idx, e] : b.coeffs) rmul(r, idx, e, ctx);
  return r;
}

NormalForm inverse_impl(const NormalForm& a, const GroupContext& ctx) {
  NormalForm r;
  for (auto it = a.coeffs.rbegin(); it != a.coeffs.rend(); ++it)
    rmul(r, it->first, checked_neg(it->second), ctx);
  return r;
}

NormalForm pow_impl(const NormalForm& a, long long k, const GroupContext& ctx) {
  if (k == 0) return identity_nf();
  NormalForm base = k < 0 ? inverse_impl(a, ctx) : a;
  unsigned long long u = k < 0 ? ~static_cast<unsigned long long>(k) + 1ULL
                               : static_cast<unsigned long long>(k);
  NormalForm acc = identity_nf();
  while (u) {
    if (u & 1) acc = mul_impl(acc, base, ctx);
    u >>= 1;
    if (u) base = mul_impl(base, base, ctx);
  }
  return acc;
}

NormalForm pow_big_impl(const NormalForm& a, const BigInt& k, const GroupContext& ctx) {
  if (k.is_zero()) return identity_nf();
  NormalForm base = k.is_negative() ? inverse_impl(a, ctx) : a;
  NormalForm acc = identity_nf();
  for (bool bit : k.magnitude_bits()) {
    acc = mul_impl(acc, acc, ctx);
    if (bit) acc = mul_impl(acc, base, ctx);
  }
  return acc;
}

NormalForm comm_impl(const NormalForm& a, const NormalForm& b, const GroupContext& ctx) {
  NormalForm ab = mul_impl(a, b, ctx);
  NormalForm ba = mul_impl(b, a, ctx);
  return mul_impl(inverse_impl(ba, ctx), ab, ctx);
}

}  // namespace

NormalForm multiply(const NormalForm& a, const NormalForm& b, const GroupContext& ctx) {
  return mul_impl(a, b, ctx);
}

NormalForm inverse(const NormalForm& a, const GroupContext& ctx) {
  return inverse_impl(a, ctx);
}

NormalForm power(const NormalForm& a, long long k, const GroupContext& ctx) {
  return pow_impl(a, k, ctx);
}

NormalForm power(const NormalForm& a, const BigInt& k, const GroupContext& ctx) {
  return pow_big_impl(a, k, ctx);
}

NormalForm commutator(const NormalForm& a, const NormalForm& b, const GroupContext& ctx) {
  return comm_impl(a, b, ctx);
}

NormalForm structure_constant(std::uint32_t i, std::uint32_t j, const GroupContext& ctx) {
  if (i >= ctx.basis_size() || j >= ctx.basis_size())
    throw std::out_of_range("basis index out of range");
  if (i == j) return identity_nf();
  if (ctx.weight_of(i) + ctx.weight_of(j) > ctx.class_bound()) return identity_nf();
  return sc_power(i, j, 1, ctx);
}

NormalForm collect(const words::Expr& e, const GroupContext& ctx) {
  using K = words::Expr::Kind;
  switch (e.kind) {
    case K::Generator: {
      if (e.gen > ctx.n()) throw std::out_of_range("generator index exceeds context rank");
      return basis_nf(ctx.basis_index({e.gen}));
    }
    case K::Product: {
      NormalForm acc = identity_nf();
      for (const auto& c : e.children) acc = mul_impl(acc, collect(*c, ctx), ctx);
      return acc;
    }
    case K::Inverse:
      return inverse_impl(collect(*e.children[0], ctx), ctx);
    case K::Power:
      return pow_big_impl(collect(*e.children[0], ctx), e.exponent, ctx);
    case K::Bracket:
      return comm_impl(collect(*e.children[0], ctx), collect(*e.children[1], ctx), ctx);
    case K::Engel: {
      NormalForm acc = collect(*e.children[0], ctx);
      NormalForm y = collect(*e.children[1], ctx);
      for (int i = 0; i < e.depth; ++i) acc = comm_impl(acc, y, ctx);
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

std::string print_normal_form(const NormalForm& nf, const GroupContext& ctx) {
  if (nf.is_identity()) return "e";
  std::string out;
  for (const auto& [idx, e] : nf.coeffs) {
    if (!out.empty()) out += ' ';
    out += ctx.basis_at(idx).to_string();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

ConsistencyReport consistency_check(const GroupContext& ctx, int trials, std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  ConsistencyReport report;
  report.trials = trials;
  if (trials < 1) throw std::invalid_argument("consistency_check needs trials >= 1");

  std::mt19937_64 rng(seed);
  words::RandomExprOptions opt;
  opt.n = ctx.n();
  opt.max_depth = 3;
  opt.max_abs_exp = 5;

  auto fail = [&](const std::string& what) {
    if (report.passed) {
      report.passed = false;
      report.witness = what;
    }
  };

  // (i) associativity on random triples
  for (int t = 0; t < trials && report.passed; ++t) {
    auto ea = words::random_expr(rng, opt);
    auto eb = words::random_expr(rng, opt);
    auto ec = words::random_expr(rng, opt);
    NormalForm a = collect(*ea, ctx), b = collect(*eb, ctx), c = collect(*ec, ctx);
    NormalForm left = multiply(multiply(a, b, ctx), c, ctx);
    NormalForm right = multiply(a, multiply(b, c, ctx), ctx);
    ++report.checks_run;
    if (left != right)
      fail("associativity failed for a=" + words::print(ea) + " b=" + words::print(eb) +
           " c=" + words::print(ec) + ": (ab)c=" + print_normal_form(left, ctx) +
           " a(bc)=" + print_normal_form(right, ctx));
  }
  report.notes.push_back("associativity triples: " + std::to_string(trials));

  // (ii) torsion of every basis commutator in modular mode, through the
  // representation and through collected powers
  if (ctx.mode().modular()) {
    const long long m = ctx.mode().modulus();
    for (std::uint32_t idx = 0; idx < ctx.basis_size() && report.passed; ++idx) {
      ReducedAlgebra::Elem img = one_plus_scaled_lie(idx, 1, ctx);
      ++report.checks_run;
      if (!ctx.algebra().is_one(ctx.algebra().pow(img, BigInt(m))))
        fail("representation torsion failed for " + ctx.basis_at(idx).to_string());
      ++report.checks_run;
      if (!power(basis_nf(idx), m, ctx).is_identity())
        fail("collected torsion failed for " + ctx.basis_at(idx).to_string());
    }
    report.notes.push_back("basis torsion checks: " + std::to_string(2 * ctx.basis_size()));
  } else {
    report.notes.push_back("basis torsion: not applicable in integer mode");
  }

  // (iii) relator absorption on random words
  int relator_rounds = std::max(trials / 5, 20);
  for (int t = 0; t < relator_rounds && report.passed; ++t) {
    auto e = words::random_expr(rng, opt);
    words::ExprPtr relator;
    if (ctx.mode().modular() && t % 2 == 0) {
      int g = 1 + static_cast<int>(rng() % ctx.n());
      relator = words::make_power(words::make_generator(g),
                                  BigInt(static_cast<long long>(ctx.mode().modulus())));
    } else {
      // random left-normalized bracket with a forced repeated entry
      int weight = 2 + static_cast<int>(rng() % 3);
      std::vector<int> entries(weight);
      for (int& v : entries) v = 1 + static_cast<int>(rng() % ctx.n());
      entries[weight - 1] = entries[rng() % (weight - 1)];
      words::ExprPtr acc = words::make_generator(entries[0]);
      for (std::size_t i = 1; i < entries.size(); ++i)
        acc = words::make_bracket(acc, words::make_generator(entries[i]));
      relator = acc;
    }
    ++report.checks_run;
    NormalForm plain = collect(*e, ctx);
    NormalForm with_rel = collect(*words::make_product({e, relator}), ctx);
    if (plain != with_rel || !collect(*relator, ctx).is_identity())
      fail("relator absorption failed for e=" + words::print(e) +
           " relator=" + words::print(relator));
  }
  report.notes.push_back("relator rounds: " + std::to_string(relator_rounds));

  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace cohen
