#include "affq/rng.hpp"

#include <algorithm>

#include "affq/error.hpp"

namespace affq {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t replica) { return splitmix64(base ^ splitmix64(replica)); }

Integer StreamRng::uniform_below(const Integer& bound) {
  if (sgn(bound) <= 0) throw DomainError("uniform_below needs a positive bound");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  if (bits <= 64) {
    const std::uint64_t n = mpz_get_ui(bound.get_mpz_t());
    // Largest multiple of n not above 2^64, as 2^64 - (2^64 mod n).
    const std::uint64_t reject_from = n == 0 ? 0 : (0 - (0 - n) % n);
    for (;;) {
      const std::uint64_t x = next();
      if (reject_from == 0 || x < reject_from) return Integer(static_cast<unsigned long>(x % n));
    }
  }
  const std::size_t words = (bits + 63) / 64;
  const std::size_t extra = words * 64 - bits;
  for (;;) {
    Integer x = 0;
    for (std::size_t i = 0; i < words; ++i) {
      x <<= 64;
      x += Integer(static_cast<unsigned long>(next()));
    }
    x >>= extra;
    if (x < bound) return x;
  }
}

AtomSampler::AtomSampler(const StepDistribution& mu) : total_(mu.weight_denominator()) {
  Integer acc = 0;
  for (const auto& w : mu.integer_weights()) {
    acc += w;
    cumulative_.push_back(acc);
  }
}

std::size_t AtomSampler::draw(StreamRng& rng) const {
  if (cumulative_.size() == 1) return 0;
  const Integer r = rng.uniform_below(total_);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  return static_cast<std::size_t>(it - cumulative_.begin());
}

}  // namespace affq
