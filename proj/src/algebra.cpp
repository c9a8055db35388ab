#include "cohen/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace cohen {

CoeffMode CoeffMode::mod_prime_power(std::uint32_t p, std::uint32_t r) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("mode requires an odd prime p");
  // small trial division is plenty for the supported range
  for (std::uint32_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) throw std::invalid_argument("mode requires an odd prime p");
  if (r < 1) throw std::invalid_argument("mode requires r >= 1");
  std::uint64_t m = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    m *= p;
    if (m > (1ULL << 30)) throw std::invalid_argument("p^r too large for this engine");
  }
  CoeffMode mode;
  mode.kind = Kind::ModPrimePower;
  mode.p = p;
  mode.r = r;
  return mode;
}

std::uint32_t CoeffMode::modulus() const {
  if (!modular()) throw std::logic_error("modulus() on integer mode");
  std::uint32_t m = 1;
  for (std::uint32_t i = 0; i < r; ++i) m *= p;
  return m;
}

long long CoeffMode::canon(long long e) const {
  if (!modular()) return e;
  long long m = modulus();
  long long v = e % m;
  return v < 0 ? v + m : v;
}

std::string CoeffMode::to_string() const {
  if (!modular()) return "Z";
  return "Z/" + std::to_string(p) + "^" + std::to_string(r);
}

std::uint64_t MonomialTable::pack(const std::vector<std::uint8_t>& letters) {
  std::uint64_t key = 0;
  for (std::uint8_t l : letters) key = (key << 8) | l;
  return key;
}

MonomialTable::MonomialTable(int n, int max_len) : n_(n), max_len_(max_len) {
  if (n < 1 || n > 7) throw std::invalid_argument("monomial table supports 1 <= n <= 7");
  if (max_len < 1 || max_len > n) throw std::invalid_argument("bad monomial length bound");

  letters_.push_back({});
  masks_.push_back(0);
  by_key_.emplace(0, 0);
  // breadth-first by length keeps degrees contiguous
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = letters_.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int l = 1; l <= n; ++l) {
        if (masks_[i] & (1u << l)) continue;
        auto seq = letters_[i];
        seq.push_back(static_cast<std::uint8_t>(l));
        masks_.push_back(masks_[i] | (1u << l));
        by_key_.emplace(pack(seq), static_cast<std::uint32_t>(letters_.size()));
        letters_.push_back(std::move(seq));
      }
    }
    level_begin = level_end;
  }
}

std::int32_t MonomialTable::concat(std::uint32_t a, std::uint32_t b) const {
  if (masks_[a] & masks_[b]) return -1;
  if (letters_[a].size() + letters_[b].size() > static_cast<std::size_t>(max_len_)) return -1;
  std::uint64_t key = pack(letters_[a]);
  for (std::uint8_t l : letters_[b]) key = (key << 8) | l;
  auto it = by_key_.find(key);
  return it == by_key_.end() ? -1 : static_cast<std::int32_t>(it->second);
}

std::int32_t MonomialTable::index_of(const std::vector<std::uint8_t>& letters) const {
  auto it = by_key_.find(pack(letters));
  return it == by_key_.end() ? -1 : static_cast<std::int32_t>(it->second);
}

std::uint32_t MonomialTable::letter_index(int letter) const {
  auto it = by_key_.find(static_cast<std::uint64_t>(letter));
  if (it == by_key_.end()) throw std::out_of_range("letter outside monomial table");
  return it->second;
}

long long ReducedAlgebra::canon_coeff(long long c) const { return mode_.canon(c); }

ReducedAlgebra::Elem ReducedAlgebra::one() const {
  Elem e = zero();
  e[0] = 1;
  return e;
}

ReducedAlgebra::Elem ReducedAlgebra::generator_unit(int letter) const {
  Elem e = one();
  e[table_->letter_index(letter)] = 1;
  return e;
}

ReducedAlgebra::Elem ReducedAlgebra::mul(const Elem& a, const Elem& b) const {
  Elem r = zero();
  const bool modular = mode_.modular();
  const long long m = modular ? mode_.modulus() : 0;
  for (std::uint32_t ia = 0; ia < a.size(); ++ia) {
    if (a[ia] == 0) continue;
    for (std::uint32_t ib = 0; ib < b.size(); ++ib) {
      if (b[ib] == 0) continue;
      std::int32_t ic = table_->concat(ia, ib);
      if (ic < 0) continue;
      if (modular) {
        r[ic] = (r[ic] + a[ia] * b[ib]) % m;  // operands < 2^30, no overflow
      } else {
        r[ic] = checked_add(r[ic], checked_mul(a[ia], b[ib]));
      }
    }
  }
  return r;
}

void ReducedAlgebra::add_scaled(Elem& a, const Elem& b, long long scale) const {
  const bool modular = mode_.modular();
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    if (b[i] == 0) continue;
    if (modular)
      a[i] = mode_.canon(a[i] + mode_.canon(scale) * b[i]);
    else
      a[i] = checked_add(a[i], checked_mul(scale, b[i]));
  }
}

bool ReducedAlgebra::is_one(const Elem& a) const {
  if (canon_coeff(a[0]) != 1) return false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (canon_coeff(a[i]) != 0) return false;
  return true;
}

ReducedAlgebra::Elem ReducedAlgebra::inverse_unit(const Elem& a) const {
  if (canon_coeff(a[0]) != 1)
    throw std::domain_error("algebra inverse needs constant term 1");
  Elem eps = a;
  eps[0] = 0;
  // (1 + eps)^-1 = sum (-eps)^t, eps nilpotent of index <= max_len + 1
  Elem acc = one();
  Elem term = one();
  for (int t = 1; t <= table_->max_len(); ++t) {
    term = mul(term, eps);
    add_scaled(acc, term, t % 2 ? -1 : 1);
  }
  return acc;
}

ReducedAlgebra::Elem ReducedAlgebra::pow(const Elem& a, const BigInt& k) const {
  if (k.is_zero()) return one();
  Elem base = k.is_negative() ? inverse_unit(a) : a;
  Elem acc = one();
  for (bool bit : k.magnitude_bits()) {
    acc = mul(acc, acc);
    if (bit) acc = mul(acc, base);
  }
  return acc;
}

ReducedAlgebra::Elem ReducedAlgebra::commutator(const Elem& a, const Elem& b) const {
  return mul(mul(inverse_unit(a), inverse_unit(b)), mul(a, b));
}

ReducedAlgebra::Elem ReducedAlgebra::evaluate(const words::Expr& e) const {
  using K = words::Expr::Kind;
  switch (e.kind) {
    case K::Generator:
      if (e.gen > table_->n())
        throw std::out_of_range("generator index exceeds context rank");
      return generator_unit(e.gen);
    case K::Product: {
      Elem acc = one();
      for (const auto& c : e.children) acc = mul(acc, evaluate(*c));
      return acc;
    }
    case K::Inverse:
      return inverse_unit(evaluate(*e.children[0]));
    case K::Power:
      return pow(evaluate(*e.children[0]), e.exponent);
    case K::Bracket:
      return commutator(evaluate(*e.children[0]), evaluate(*e.children[1]));
    case K::Engel: {
      Elem acc = evaluate(*e.children[0]);
      Elem y = evaluate(*e.children[1]);
      for (int i = 0; i < e.depth; ++i) acc = commutator(acc, y);
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace cohen
