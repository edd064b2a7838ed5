#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "affq/rational.hpp"

namespace affq {

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Distinct prime factors of n in ascending order (Pollard rho). n = 0 or 1
/// gives an empty list.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Distinct primes dividing |z|. Throws DomainError if |z| does not fit in
/// 64 bits; factoring large integers is out of scope.
std::vector<std::uint64_t> prime_factors(const Integer& z);

/// A place of Q: a finite prime p or the archimedean place written ∞.
/// Finite places order by value and ∞ sorts last.
class ExtendedPrime {
 public:
  /// Throws DomainError unless p is prime.
  explicit ExtendedPrime(std::uint64_t p);
  static ExtendedPrime infinity() { return ExtendedPrime(); }

  /// Parses "inf", "∞" or a decimal prime.
  static ExtendedPrime parse(const std::string& text);

  bool is_infinite() const { return value_ == 0; }
  /// The finite prime. Throws DomainError at ∞.
  std::uint64_t prime() const;
  std::string str() const;

  friend bool operator==(ExtendedPrime, ExtendedPrime) = default;
  friend std::strong_ordering operator<=>(ExtendedPrime a, ExtendedPrime b) {
    if (a.value_ == b.value_) return std::strong_ordering::equal;
    if (a.is_infinite()) return std::strong_ordering::greater;
    if (b.is_infinite()) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  ExtendedPrime() = default;
  std::uint64_t value_ = 0;
};

}  // namespace affq
