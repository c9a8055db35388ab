#ifndef COHEN_BIGINT_HPP
#define COHEN_BIGINT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cohen {

struct overflow_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arbitrary-precision signed integer, sign + base-2^32 magnitude.
/// Supports exactly the operations the engine needs: ring arithmetic,
/// exact small division, small modulus, decimal I/O, p-adic valuation.
class BigInt {
public:
  BigInt() = default;
  BigInt(long long v);
  explicit BigInt(std::string_view decimal);

  static BigInt from_string(std::string_view decimal) { return BigInt(decimal); }

  bool is_zero() const { return mag_.empty(); }
  bool is_negative() const { return sign_ < 0; }
  int sign() const { return sign_; }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  bool operator==(const BigInt& o) const { return sign_ == o.sign_ && mag_ == o.mag_; }
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;
  bool operator<=(const BigInt& o) const { return *this < o || *this == o; }
  bool operator>(const BigInt& o) const { return o < *this; }
  bool operator>=(const BigInt& o) const { return o <= *this; }

  /// Quotient of an exact division by a small positive integer.
  /// Throws std::domain_error when the division leaves a remainder.
  BigInt div_exact(std::uint32_t d) const;

  /// True when d divides this value.
  bool divisible_by(std::uint32_t d) const;

  /// Canonical residue in [0, m), Euclidean also for negative values.
  std::uint32_t mod_u32(std::uint32_t m) const;

  /// Checked narrowing; throws cohen::overflow_error when out of range.
  long long to_int64() const;
  bool fits_int64() const;

  std::string to_string() const;

  /// Largest e with p^e dividing the value; requires a nonzero value.
  int valuation(std::uint32_t p) const;

  /// Bits of the magnitude, most significant first (for binary powering).
  std::vector<bool> magnitude_bits() const;

private:
  int sign_ = 0;                    // -1, 0, +1
  std::vector<std::uint32_t> mag_;  // little-endian limbs, no leading zeros

  void trim();
  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  std::uint32_t divmod_small(std::uint32_t d);  // in-place quotient, returns remainder
};

BigInt binomial(std::uint32_t n, std::uint32_t k);
BigInt factorial(std::uint32_t n);

/// Checked int64 helpers shared by the exponent arithmetic.
long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);
long long checked_neg(long long a);

}  // namespace cohen

#endif
