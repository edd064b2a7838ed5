#include "affq/padic.hpp"

#include <cmath>
#include <sstream>

#include "affq/arith.hpp"
#include "affq/error.hpp"

namespace affq {

bool PadicExpansion::is_zero() const {
  for (auto d : digits) {
    if (d != 0) return false;
  }
  return true;
}

Rational PadicExpansion::resum() const {
  const Integer prime(static_cast<unsigned long>(p));
  Integer acc = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    acc = acc * prime + Integer(static_cast<unsigned long>(*it));
  }
  return Rational(acc, Integer(1)) * power(prime, start_exponent);
}

std::string PadicExpansion::render() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) os << ' ';
    os << digits[i];
  }
  os << " (base " << p << "), start=" << start_exponent;
  return os.str();
}

PadicExpansion expand(const Rational& q, std::uint64_t p, std::size_t precision) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (precision == 0) throw DomainError("p-adic precision must be at least 1");

  PadicExpansion e;
  e.p = p;
  e.exact_source = q;
  e.digits.assign(precision, 0);
  if (q.is_zero()) return e;

  const Integer prime(static_cast<unsigned long>(p));
  Integer num = q.numerator();
  Integer den = q.denominator();
  Integer rest;
  const auto vn = mpz_remove(rest.get_mpz_t(), num.get_mpz_t(), prime.get_mpz_t());
  num = rest;
  const auto vd = mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), prime.get_mpz_t());
  den = rest;
  e.start_exponent = static_cast<std::int64_t>(vn) - static_cast<std::int64_t>(vd);

  Integer modulus;
  mpz_pow_ui(modulus.get_mpz_t(), prime.get_mpz_t(), precision);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  Integer unit = num * inv;
  mpz_mod(unit.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());

  for (std::size_t i = 0; i < precision; ++i) {
    Integer digit;
    mpz_fdiv_qr(unit.get_mpz_t(), digit.get_mpz_t(), unit.get_mpz_t(), prime.get_mpz_t());
    e.digits[i] = mpz_get_ui(digit.get_mpz_t());
  }
  return e;
}

double padic_log_distance(const Rational& q1, const Rational& q2, std::uint64_t p) {
  if (q1 == q2) throw DomainError("p-adic distance between equal points");
  const auto v = valuation(q1 - q2, p).value();
  return -static_cast<double>(v) * std::log(static_cast<double>(p));
}

BallKey ball_key(const PadicExpansion& e, std::int64_t radius_exponent) {
  BallKey key;
  key.p = e.p;
  key.radius_exponent = radius_exponent;
  // All-zero digits only ever encode the value 0 itself.
  if (e.is_zero() || e.start_exponent >= radius_exponent) {
    key.low_exponent = radius_exponent;
    return key;
  }
  if (e.end_exponent() < radius_exponent) {
    throw InsufficientPrecision("expansion ends at exponent " + std::to_string(e.end_exponent()) +
                                ", ball needs " + std::to_string(radius_exponent));
  }
  key.low_exponent = e.start_exponent;
  const auto count = static_cast<std::size_t>(radius_exponent - e.start_exponent);
  key.digits.assign(e.digits.begin(), e.digits.begin() + static_cast<std::ptrdiff_t>(count));
  while (!key.digits.empty() && key.digits.back() == 0) key.digits.pop_back();
  return key;
}

std::string BallKey::str() const {
  std::ostringstream os;
  os << p << ':' << radius_exponent << ':' << low_exponent << ':';
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) os << '.';
    os << digits[i];
  }
  return os.str();
}

}  // namespace affq
