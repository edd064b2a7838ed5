#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace affq {

using Integer = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
/// Zero is 0/1. Backed by GMP; every operation returns a canonical value.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q);

  /// Parses "num/den" or "num" in decimal. Throws ConfigError on bad text or
  /// a zero denominator.
  static Rational parse(std::string_view text);

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  Rational abs() const;
  Rational reciprocal() const;
  double to_double() const { return q_.get_d(); }

  /// Canonical "num/den" form, e.g. "-3/4", "0/1", "5/1".
  std::string str() const;

  /// Number of bits in numerator plus denominator.
  std::size_t bit_size() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// floor(q) as an exact integer.
Integer floor(const Rational& q);

/// p^e for a possibly negative exponent.
Rational power(const Integer& base, long exponent);

/// Natural log of |z| for a nonzero big integer, without overflow.
double log_abs(const Integer& z);

}  // namespace affq
