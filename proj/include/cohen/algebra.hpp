#ifndef COHEN_ALGEBRA_HPP
#define COHEN_ALGEBRA_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cohen/bigint.hpp"
#include "cohen/expr.hpp"

namespace cohen {

/// Coefficient domain of a group context: plain integers, or residues
/// modulo p^r for an odd prime p.
struct CoeffMode {
  enum class Kind { Integers, ModPrimePower };

  Kind kind = Kind::Integers;
  std::uint32_t p = 0;
  std::uint32_t r = 0;

  static CoeffMode integers() { return {}; }
  static CoeffMode mod_prime_power(std::uint32_t p, std::uint32_t r);

  bool modular() const { return kind == Kind::ModPrimePower; }
  std::uint32_t modulus() const;  // p^r, requires modular()

  /// Canonical exponent: identity for integers, residue in [0,p^r) otherwise.
  long long canon(long long e) const;

  std::string to_string() const;
  bool operator==(const CoeffMode& o) const {
    return kind == o.kind && p == o.p && r == o.r;
  }
};

/// Table of all monomials with pairwise-distinct letters from {1..n},
/// length at most max_len. Index 0 is the empty monomial.
class MonomialTable {
public:
  MonomialTable(int n, int max_len);

  std::size_t size() const { return letters_.size(); }
  int n() const { return n_; }
  int max_len() const { return max_len_; }

  const std::vector<std::uint8_t>& letters(std::uint32_t idx) const { return letters_[idx]; }

  /// Index of the concatenation, or -1 when a letter repeats or the
  /// result exceeds max_len.
  std::int32_t concat(std::uint32_t a, std::uint32_t b) const;

  /// Index of the monomial with exactly these letters in this order;
  /// -1 when absent from the table.
  std::int32_t index_of(const std::vector<std::uint8_t>& letters) const;

  std::uint32_t letter_index(int letter) const;  // single-letter monomial

private:
  int n_;
  int max_len_;
  std::vector<std::vector<std::uint8_t>> letters_;
  std::vector<std::uint32_t> masks_;
  std::unordered_map<std::uint64_t, std::uint32_t> by_key_;

  static std::uint64_t pack(const std::vector<std::uint8_t>& letters);
};

/// The quotient of the free associative ring on X_1..X_n by all
/// monomials with a repeated variable, truncated at degree max_len.
/// Group words embed via x_i -> 1 + X_i; every unit arising from a
/// group word has constant term 1 and nilpotent remainder, so inverses
/// and powers are exact finite sums.
class ReducedAlgebra {
public:
  using Elem = std::vector<long long>;  // dense over the monomial table

  ReducedAlgebra(const MonomialTable* table, CoeffMode mode)
      : table_(table), mode_(mode) {}

  const MonomialTable& table() const { return *table_; }
  const CoeffMode& mode() const { return mode_; }

  Elem zero() const { return Elem(table_->size(), 0); }
  Elem one() const;
  Elem generator_unit(int letter) const;  // 1 + X_letter

  Elem mul(const Elem& a, const Elem& b) const;
  void add_scaled(Elem& a, const Elem& b, long long scale) const;
  Elem inverse_unit(const Elem& a) const;
  Elem pow(const Elem& a, const BigInt& k) const;
  Elem commutator(const Elem& a, const Elem& b) const;

  bool is_one(const Elem& a) const;

  /// Image of a group word under x_i -> 1 + X_i; rejects generator
  /// indices above n.
  Elem evaluate(const words::Expr& e) const;

  long long canon_coeff(long long c) const;

private:
  const MonomialTable* table_;
  CoeffMode mode_;
};

}  // namespace cohen

#endif
