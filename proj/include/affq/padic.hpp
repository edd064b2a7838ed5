#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "affq/rational.hpp"

namespace affq {

/// Truncated base-p expansion q ≡ Σ digits[i]·p^(start + i) mod p^(start + N).
/// The leading digit is nonzero unless the value is 0, which is stored as
/// start 0 with all-zero digits.
struct PadicExpansion {
  std::uint64_t p = 2;
  std::int64_t start_exponent = 0;
  std::vector<std::uint64_t> digits;
  std::optional<Rational> exact_source;

  std::size_t precision() const { return digits.size(); }
  /// One past the highest represented exponent.
  std::int64_t end_exponent() const { return start_exponent + static_cast<std::int64_t>(digits.size()); }
  bool is_zero() const;

  /// Σ digits[i]·p^(start+i) as an exact rational.
  Rational resum() const;

  /// "d_v d_{v+1} ... (base p), start=v".
  std::string render() const;

  friend bool operator==(const PadicExpansion& a, const PadicExpansion& b) {
    return a.p == b.p && a.start_exponent == b.start_exponent && a.digits == b.digits;
  }
};

/// Hensel digit extraction: factor out p^v, invert the p-free denominator
/// modulo p^N. Requires N >= 1 and p prime.
PadicExpansion expand(const Rational& q, std::uint64_t p, std::size_t precision);

/// ln|q1 - q2|_p. Rejects q1 == q2.
double padic_log_distance(const Rational& q1, const Rational& q2, std::uint64_t p);

/// Identifies the ball {x : v_p(x - q) >= radius_exponent}.
struct BallKey {
  std::uint64_t p = 2;
  std::int64_t radius_exponent = 0;
  std::int64_t low_exponent = 0;        ///< exponent of digits.front()
  std::vector<std::uint64_t> digits;    ///< digits below radius_exponent; empty for the ball at 0

  friend bool operator==(const BallKey&, const BallKey&) = default;
  friend auto operator<=>(const BallKey&, const BallKey&) = default;

  std::string str() const;
};

/// Key of the p-adic ball of radius p^(-radius_exponent) containing the
/// expansion. Throws InsufficientPrecision if digits below radius_exponent
/// are not all represented.
BallKey ball_key(const PadicExpansion& e, std::int64_t radius_exponent);

}  // namespace affq
