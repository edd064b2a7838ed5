#include "affq/arith.hpp"

#include <algorithm>
#include <cmath>

#include "affq/error.hpp"

namespace affq {

std::int64_t Valuation::value() const {
  if (!value_) throw DomainError("valuation of zero is infinite");
  return *value_;
}

std::int64_t valuation(const Integer& z, std::uint64_t p) {
  if (sgn(z) == 0) throw DomainError("integer valuation of zero");
  Integer rest;
  const Integer prime(static_cast<unsigned long>(p));
  return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
}

Valuation valuation(const Rational& q, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (q.is_zero()) return Valuation::infinite();
  return Valuation(valuation(q.numerator(), p) - valuation(q.denominator(), p));
}

LogNorm log_norm(const Rational& q, ExtendedPrime p) {
  if (q.is_zero()) throw DomainError("log norm of zero");
  if (p.is_infinite()) {
    return {log_abs(q.numerator()) - log_abs(q.denominator()), std::nullopt};
  }
  const auto v = valuation(q, p.prime()).value();
  return {-static_cast<double>(v) * std::log(static_cast<double>(p.prime())), v};
}

double height(const Rational& q) {
  if (q.is_zero()) throw DomainError("height of zero");
  return log_abs(q.numerator()) + log_abs(q.denominator());
}

double height_plus(const Rational& q) {
  if (q.is_zero()) return 0.0;
  const Integer num = ::abs(q.numerator());
  const Integer den = q.denominator();
  return log_abs(num > den ? num : den);
}

double log_plus_norm(const Rational& q, ExtendedPrime p) {
  if (q.is_zero()) return 0.0;
  return std::max(0.0, log_norm(q, p).value);
}

double partial_height_plus(const PlaceVector& z, const PlaceSet& places) {
  double total = 0.0;
  for (const auto& p : places) {
    const auto it = z.find(p);
    if (it != z.end()) total += log_plus_norm(it->second, p);
  }
  return total;
}

}  // namespace affq
