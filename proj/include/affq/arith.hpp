#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "affq/primes.hpp"
#include "affq/rational.hpp"

namespace affq {

/// p-adic valuation: an integer, or +∞ for the value 0.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  explicit Valuation(std::int64_t v) : value_(v) {}

  bool is_infinite() const { return !value_.has_value(); }
  /// Throws DomainError when infinite.
  std::int64_t value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }

 private:
  Valuation() = default;
  std::optional<std::int64_t> value_;
};

/// Exponent of p in a nonzero integer.
std::int64_t valuation(const Integer& z, std::uint64_t p);

/// v_p(q) = v_p(num) - v_p(den); +∞ at q = 0. Rejects non-prime p.
Valuation valuation(const Rational& q, std::uint64_t p);

struct LogNorm {
  double value;                          ///< ln|q|_p
  std::optional<std::int64_t> valuation;  ///< exact v_p(q) for finite p
};

/// ln|q|_p, with p = ∞ the Euclidean absolute value. Rejects q = 0.
LogNorm log_norm(const Rational& q, ExtendedPrime p);

/// Sum over finite primes of |ln|q|_p|, i.e. ln|num| + ln den. Rejects q = 0.
double height(const Rational& q);

/// Sum over all places of ln⁺|q|_p, i.e. ln max(|num|, den); 0 at q = 0.
double height_plus(const Rational& q);

/// ln⁺|q|_p at a single place; 0 at q = 0.
double log_plus_norm(const Rational& q, ExtendedPrime p);

/// Finitely many coordinates of a point in the product of the fields Q_p.
using PlaceVector = std::map<ExtendedPrime, Rational>;
using PlaceSet = std::set<ExtendedPrime>;

/// Sum of ln⁺|z_p|_p over p in places; absent coordinates count as 0.
double partial_height_plus(const PlaceVector& z, const PlaceSet& places);

}  // namespace affq
