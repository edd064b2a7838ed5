#include "affq/primes.hpp"

#include <algorithm>
#include <numeric>

#include "affq/error.hpp"

namespace affq {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Pollard rho with Brent's cycle detection; n must be composite and odd.
u64 rho(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<u64> prime_factors(const Integer& z) {
  Integer m = ::abs(z);
  if (mpz_sizeinbase(m.get_mpz_t(), 2) > 64) {
    throw DomainError("cannot factor integer larger than 64 bits: " + m.get_str());
  }
  return prime_factors(static_cast<u64>(mpz_get_ui(m.get_mpz_t())));
}

ExtendedPrime::ExtendedPrime(u64 p) : value_(p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

ExtendedPrime ExtendedPrime::parse(const std::string& text) {
  if (text == "inf" || text == "oo" || text == "∞" || text == "infinity") return infinity();
  try {
    std::size_t pos = 0;
    const u64 p = std::stoull(text, &pos);
    if (pos != text.size()) throw ConfigError("bad prime '" + text + "'");
    return ExtendedPrime(p);
  } catch (const std::logic_error&) {
    throw ConfigError("bad prime '" + text + "'");
  }
}

u64 ExtendedPrime::prime() const {
  if (is_infinite()) throw DomainError("the infinite place has no finite prime");
  return value_;
}

std::string ExtendedPrime::str() const { return is_infinite() ? "inf" : std::to_string(value_); }

}  // namespace affq
