#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "integen/bigint.hpp"

namespace integen {

/// Exact rational number. Canonical form: denominator > 0, gcd(|num|, den) = 1,
/// zero is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(int v) : num_(v), den_(1) {}        // NOLINT
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}

  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.is_negative()) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1) && !g.is_zero()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    if (num_.is_zero()) den_ = BigInt(1);
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == BigInt(1) && den_ == BigInt(1); }
  bool is_negative() const { return num_.is_negative(); }
  bool is_integer() const { return den_ == BigInt(1); }
  int signum() const { return num_.signum(); }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(den_, num_);
  }

  Rational abs() const { return is_negative() ? -*this : *this; }

  Rational pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Rational base = *this, acc = Rational(1);
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

 private:
  BigInt num_;
  BigInt den_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline Rational zero_like(const Rational&) { return Rational(); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational int_like(const Rational&, long long v) { return Rational(v); }

/// Exact rational square root when both numerator and denominator are perfect
/// squares; nullopt otherwise (including values too large for the search).
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r.is_negative()) return std::nullopt;
  if (r.is_zero()) return Rational(0);
  auto isqrt = [](const BigInt& v) -> std::optional<BigInt> {
    if (!v.fits_int64()) return std::nullopt;
    long long n = v.to_int64();
    long long root = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (root > 0 && root * root > n) --root;
    while ((root + 1) * (root + 1) <= n) ++root;
    if (root * root != n) return std::nullopt;
    return BigInt(root);
  };
  auto sn = isqrt(r.num());
  if (!sn) return std::nullopt;
  auto sd = isqrt(r.den());
  if (!sd) return std::nullopt;
  return Rational(*sn, *sd);
}

}  // namespace integen
