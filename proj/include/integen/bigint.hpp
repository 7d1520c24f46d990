#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace integen {

/// Arbitrary-precision signed integer, sign-magnitude with 32-bit limbs.
/// Zero is the empty limb vector with positive sign.
class BigInt {
 public:
  BigInt() = default;

  BigInt(long long v) {  // NOLINT: implicit by design, mirrors int literals
    bool neg = v < 0;
    unsigned long long mag = neg ? 0ULL - static_cast<unsigned long long>(v)
                                 : static_cast<unsigned long long>(v);
    while (mag != 0) {
      limbs_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffULL));
      mag >>= 32;
    }
    neg_ = neg && !limbs_.empty();
  }

  BigInt(int v) : BigInt(static_cast<long long>(v)) {}

  static BigInt from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
    BigInt r;
    for (; i < s.size(); ++i) {
      char c = s[i];
      if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit");
      r = r.mul_small(10U);
      r = r.add_small(static_cast<std::uint32_t>(c - '0'));
    }
    r.neg_ = neg && !r.limbs_.empty();
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return neg_; }
  int signum() const { return limbs_.empty() ? 0 : (neg_ ? -1 : 1); }

  BigInt abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
  }

  BigInt operator-() const {
    BigInt r = *this;
    if (!r.limbs_.empty()) r.neg_ = !r.neg_;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.neg_ == b.neg_) {
      BigInt r;
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.neg_ = a.neg_ && !r.limbs_.empty();
      return r;
    }
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c == 0) return BigInt{};
    BigInt r;
    if (c > 0) {
      r.limbs_ = sub_mag(a.limbs_, b.limbs_);
      r.neg_ = a.neg_;
    } else {
      r.limbs_ = sub_mag(b.limbs_, a.limbs_);
      r.neg_ = b.neg_;
    }
    if (r.limbs_.empty()) r.neg_ = false;
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt{};
    BigInt r;
    r.limbs_ = mul_mag(a.limbs_, b.limbs_);
    r.neg_ = a.neg_ != b.neg_;
    return r;
  }

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  /// Truncated division (C semantics): quotient rounds toward zero,
  /// remainder carries the dividend's sign.
  friend std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    auto [qm, rm] = divmod_mag(a.limbs_, b.limbs_);
    BigInt q, r;
    q.limbs_ = std::move(qm);
    r.limbs_ = std::move(rm);
    q.neg_ = (a.neg_ != b.neg_) && !q.limbs_.empty();
    r.neg_ = a.neg_ && !r.limbs_.empty();
    return {std::move(q), std::move(r)};
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
  friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_;
    int c = cmp_mag(a.limbs_, b.limbs_);
    return a.neg_ ? c > 0 : c < 0;
  }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  static BigInt gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    while (!b.is_zero()) {
      BigInt r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  bool fits_int64() const {
    if (limbs_.size() > 2) return false;
    unsigned long long m = mag_u64();
    return neg_ ? m <= 0x8000000000000000ULL : m <= 0x7fffffffffffffffULL;
  }

  long long to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: does not fit int64");
    unsigned long long m = mag_u64();
    return neg_ ? -static_cast<long long>(m - 1) - 1 : static_cast<long long>(m);
  }

  std::string to_string() const {
    if (limbs_.empty()) return "0";
    std::vector<std::uint32_t> work = limbs_;
    std::string digits;
    while (!work.empty()) {
      std::uint64_t rem = 0;
      for (std::size_t i = work.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | work[i];
        work[i] = static_cast<std::uint32_t>(cur / 1000000000ULL);
        rem = cur % 1000000000ULL;
      }
      while (!work.empty() && work.back() == 0) work.pop_back();
      for (int k = 0; k < 9; ++k) {
        digits.push_back(static_cast<char>('0' + rem % 10));
        rem /= 10;
      }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (neg_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
  }

 private:
  std::vector<std::uint32_t> limbs_;
  bool neg_ = false;

  unsigned long long mag_u64() const {
    unsigned long long m = 0;
    if (!limbs_.empty()) m = limbs_[0];
    if (limbs_.size() == 2) m |= static_cast<unsigned long long>(limbs_[1]) << 32;
    return m;
  }

  BigInt mul_small(std::uint32_t f) const {
    BigInt r = *this;
    std::uint64_t carry = 0;
    for (auto& limb : r.limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * f + carry;
      limb = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
    if (r.limbs_.empty()) r.neg_ = false;
    return r;
  }

  BigInt add_small(std::uint32_t v) const {
    BigInt r = *this;
    std::uint64_t carry = v;
    for (auto& limb : r.limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) + carry;
      limb = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
      if (!carry) break;
    }
    if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
    return r;
  }

  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r(big.size());
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
      std::uint64_t cur = carry + big[i] + (i < small.size() ? small[i] : 0);
      r[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) r.push_back(static_cast<std::uint32_t>(carry));
    return r;
  }

  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
      borrow = cur < 0;
      if (cur < 0) cur += (1LL << 32);
      r[i] = static_cast<std::uint32_t>(cur);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * b[j] + r[i + j] + carry;
        r[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      r[i + b.size()] += static_cast<std::uint32_t>(carry);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // Knuth Algorithm D on magnitudes; returns (quotient, remainder).
  static std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> divmod_mag(
      const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& v) {
    if (cmp_mag(u, v) < 0) return {{}, u};
    if (v.size() == 1) {
      std::vector<std::uint32_t> q(u.size());
      std::uint64_t rem = 0;
      for (std::size_t i = u.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | u[i];
        q[i] = static_cast<std::uint32_t>(cur / v[0]);
        rem = cur % v[0];
      }
      while (!q.empty() && q.back() == 0) q.pop_back();
      std::vector<std::uint32_t> r;
      if (rem) r.push_back(static_cast<std::uint32_t>(rem));
      return {std::move(q), std::move(r)};
    }

    int s = 0;
    for (std::uint32_t top = v.back(); !(top & 0x80000000U); top <<= 1) ++s;
    const std::size_t n = v.size();
    const std::size_t m = u.size() - n;

    auto shl = [s](const std::vector<std::uint32_t>& x, std::size_t extra) {
      std::vector<std::uint32_t> r(x.size() + extra, 0);
      std::uint32_t carry = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        r[i] = (x[i] << s) | carry;
        carry = s ? static_cast<std::uint32_t>(static_cast<std::uint64_t>(x[i]) >> (32 - s)) : 0;
      }
      if (x.size() < r.size()) r[x.size()] = carry;
      return r;
    };
    std::vector<std::uint32_t> un = shl(u, 1);
    std::vector<std::uint32_t> vn = shl(v, 0);

    std::vector<std::uint32_t> q(m + 1, 0);
    for (std::size_t j = m + 1; j-- > 0;) {
      std::uint64_t num = (static_cast<std::uint64_t>(un[j + n]) << 32) | un[j + n - 1];
      std::uint64_t qhat = num / vn[n - 1];
      std::uint64_t rhat = num % vn[n - 1];
      while (qhat >= (1ULL << 32) ||
             qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
        --qhat;
        rhat += vn[n - 1];
        if (rhat >= (1ULL << 32)) break;
      }
      // multiply-subtract qhat * vn from un[j .. j+n]
      std::int64_t borrow = 0;
      std::uint64_t carry = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t p = qhat * vn[i] + carry;
        carry = p >> 32;
        std::int64_t t = static_cast<std::int64_t>(un[i + j]) -
                         static_cast<std::int64_t>(p & 0xffffffffULL) - borrow;
        borrow = t < 0;
        if (t < 0) t += (1LL << 32);
        un[i + j] = static_cast<std::uint32_t>(t);
      }
      std::int64_t t = static_cast<std::int64_t>(un[j + n]) -
                       static_cast<std::int64_t>(carry) - borrow;
      bool neg = t < 0;
      un[j + n] = static_cast<std::uint32_t>(neg ? t + (1LL << 32) : t);
      if (neg) {
        // qhat was one too large: add vn back
        --qhat;
        std::uint64_t c2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
          std::uint64_t cur = static_cast<std::uint64_t>(un[i + j]) + vn[i] + c2;
          un[i + j] = static_cast<std::uint32_t>(cur);
          c2 = cur >> 32;
        }
        un[j + n] = static_cast<std::uint32_t>(un[j + n] + c2);
      }
      q[j] = static_cast<std::uint32_t>(qhat);
    }

    while (!q.empty() && q.back() == 0) q.pop_back();
    std::vector<std::uint32_t> r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = (un[i] >> s);
      if (s && i + 1 < un.size())
        r[i] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(un[i + 1]) << (32 - s));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return {std::move(q), std::move(r)};
  }
};

}  // namespace integen
