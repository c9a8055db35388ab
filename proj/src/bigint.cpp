#include "cohen/bigint.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace cohen {

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  unsigned long long u = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                               : static_cast<unsigned long long>(v);
  while (u) {
    mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffULL));
    u >>= 32;
  }
}

BigInt::BigInt(std::string_view s) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
  }
  if (pos == s.size()) throw std::invalid_argument("BigInt: empty numeral");
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos])))
      throw std::invalid_argument("BigInt: bad digit in numeral");
    // *this = *this * 10 + digit, on magnitudes
    std::uint64_t carry = static_cast<std::uint64_t>(s[pos] - '0');
    for (auto& limb : mag_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * 10 + carry;
      limb = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    while (carry) {
      mag_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffULL));
      carry >>= 32;
    }
  }
  trim();
  if (!mag_.empty()) sign_ = neg ? -1 : 1;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r;
  r.reserve(std::max(a.size(), b.size()) + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    std::uint64_t cur = carry;
    if (i < a.size()) cur += a[i];
    if (i < b.size()) cur += b[i];
    r.push_back(static_cast<std::uint32_t>(cur & 0xffffffffULL));
    carry = cur >> 32;
  }
  if (carry) r.push_back(static_cast<std::uint32_t>(carry));
  return r;
}

// requires |a| >= |b|
std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r;
  r.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (cur < 0) {
      cur += 1LL << 32;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.push_back(static_cast<std::uint32_t>(cur));
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  BigInt r;
  if (sign_ == o.sign_) {
    r.mag_ = add_mag(mag_, o.mag_);
    r.sign_ = sign_;
  } else {
    int c = cmp_mag(mag_, o.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.mag_ = sub_mag(mag_, o.mag_);
      r.sign_ = sign_;
    } else {
      r.mag_ = sub_mag(o.mag_, mag_);
      r.sign_ = o.sign_;
    }
  }
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  if (sign_ == 0 || o.sign_ == 0) return BigInt();
  BigInt r;
  r.mag_.assign(mag_.size() + o.mag_.size(), 0);
  for (std::size_t i = 0; i < mag_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.mag_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(mag_[i]) * o.mag_[j] +
                          r.mag_[i + j] + carry;
      r.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    std::size_t k = i + o.mag_.size();
    while (carry) {
      std::uint64_t cur = r.mag_[k] + carry;
      r.mag_[k] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  r.sign_ = sign_ * o.sign_;
  return r;
}

bool BigInt::operator<(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_;
  int c = cmp_mag(mag_, o.mag_);
  return sign_ >= 0 ? c < 0 : c > 0;
}

std::uint32_t BigInt::divmod_small(std::uint32_t d) {
  std::uint64_t rem = 0;
  for (std::size_t i = mag_.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | mag_[i];
    mag_[i] = static_cast<std::uint32_t>(cur / d);
    rem = cur % d;
  }
  trim();
  return static_cast<std::uint32_t>(rem);
}

BigInt BigInt::div_exact(std::uint32_t d) const {
  if (d == 0) throw std::domain_error("BigInt: division by zero");
  BigInt r = *this;
  std::uint32_t rem = r.divmod_small(d);
  if (rem != 0) throw std::domain_error("BigInt: inexact division");
  return r;
}

bool BigInt::divisible_by(std::uint32_t d) const {
  if (d == 0) throw std::domain_error("BigInt: division by zero");
  BigInt r = *this;
  return r.divmod_small(d) == 0;
}

std::uint32_t BigInt::mod_u32(std::uint32_t m) const {
  if (m == 0) throw std::domain_error("BigInt: zero modulus");
  BigInt r = *this;
  std::uint32_t rem = r.divmod_small(m);
  if (sign_ < 0 && rem != 0) rem = m - rem;
  return rem;
}

bool BigInt::fits_int64() const {
  if (mag_.size() > 2) return false;
  unsigned long long u = 0;
  if (mag_.size() >= 1) u = mag_[0];
  if (mag_.size() == 2) u |= static_cast<unsigned long long>(mag_[1]) << 32;
  if (sign_ >= 0) return u <= static_cast<unsigned long long>(std::numeric_limits<long long>::max());
  return u <= static_cast<unsigned long long>(std::numeric_limits<long long>::max()) + 1ULL;
}

long long BigInt::to_int64() const {
  if (!fits_int64()) throw overflow_error("BigInt: value exceeds int64");
  unsigned long long u = 0;
  if (mag_.size() >= 1) u = mag_[0];
  if (mag_.size() == 2) u |= static_cast<unsigned long long>(mag_[1]) << 32;
  if (sign_ >= 0) return static_cast<long long>(u);
  return -static_cast<long long>(u - 1) - 1;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  BigInt t = *this;
  std::string digits;
  while (!t.mag_.empty()) {
    std::uint32_t rem = t.divmod_small(1000000000u);
    if (t.mag_.empty()) {
      // most significant chunk, no padding
      digits = std::to_string(rem) + digits;
    } else {
      std::string part = std::to_string(rem);
      digits = std::string(9 - part.size(), '0') + part + digits;
    }
  }
  return (sign_ < 0 ? "-" : "") + digits;
}

int BigInt::valuation(std::uint32_t p) const {
  if (is_zero()) throw std::domain_error("BigInt: valuation of zero");
  if (p < 2) throw std::domain_error("BigInt: valuation base must be >= 2");
  BigInt t = *this;
  int v = 0;
  for (;;) {
    BigInt q = t;
    std::uint32_t rem = q.divmod_small(p);
    if (rem != 0) return v;
    t = q;
    ++v;
  }
}

std::vector<bool> BigInt::magnitude_bits() const {
  std::vector<bool> bits;
  for (std::size_t i = mag_.size(); i-- > 0;) {
    for (int b = 31; b >= 0; --b) {
      bool bit = (mag_[i] >> b) & 1u;
      if (bits.empty() && !bit) continue;
      bits.push_back(bit);
    }
  }
  return bits;
}

BigInt binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt r(1);
  for (std::uint32_t i = 1; i <= k; ++i) {
    r = r * BigInt(static_cast<long long>(n - i + 1));
    r = r.div_exact(i);
  }
  return r;
}

BigInt factorial(std::uint32_t n) {
  BigInt r(1);
  for (std::uint32_t i = 2; i <= n; ++i) r = r * BigInt(static_cast<long long>(i));
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error("int64 addition overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("int64 multiplication overflow");
  return r;
}

long long checked_neg(long long a) {
  if (a == std::numeric_limits<long long>::min()) throw overflow_error("int64 negation overflow");
  return -a;
}

}  // namespace cohen
