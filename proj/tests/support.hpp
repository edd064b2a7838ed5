#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "affq/measure.hpp"

namespace affq_test {

inline affq::Rational rat(const std::string& s) { return affq::Rational::parse(s); }

inline affq::AffineMap aff(const std::string& a, const std::string& b) { return {rat(a), rat(b)}; }

inline affq::StepDistribution two_atoms(const std::string& a1, const std::string& b1, const std::string& w1,
                                        const std::string& a2, const std::string& b2, const std::string& w2) {
  return affq::StepDistribution({{aff(a1, b1), rat(w1)}, {aff(a2, b2), rat(w2)}});
}

inline affq::StepDistribution mu_bias() { return two_atoms("2", "0", "1/4", "1/2", "1", "3/4"); }
inline affq::StepDistribution mu_rev() { return two_atoms("2", "0", "3/4", "1/2", "1", "1/4"); }
inline affq::StepDistribution mu_sym() { return two_atoms("2", "0", "1/2", "1/2", "1", "1/2"); }

// Random nonzero rationals with numerator and denominator below `limit`.
class RationalGen {
 public:
  explicit RationalGen(std::uint64_t seed) : rng_(seed) {}

  affq::Rational nonzero(std::uint64_t limit) {
    std::uniform_int_distribution<std::uint64_t> d(1, limit);
    affq::Integer num(std::to_string(d(rng_)));
    const affq::Integer den(std::to_string(d(rng_)));
    if (rng_() & 1) num = -num;
    return {num, den};
  }

  affq::Rational any(std::uint64_t limit) {
    if (rng_() % 16 == 0) return affq::Rational(0);
    return nonzero(limit);
  }

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace affq_test
