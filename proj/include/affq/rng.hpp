#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "affq/measure.hpp"

namespace affq {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of replica i under a base seed: splitmix64(base ^ splitmix64(i)).
/// Part of the reproducibility contract: replica i always sees the same
/// stream regardless of how replicas are scheduled.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t replica);

/// Random stream for one replica. The engine is std::mt19937_64, whose
/// output sequence is fixed by the C++ standard.
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound) by rejection; exact for any bound > 0.
  Integer uniform_below(const Integer& bound);

 private:
  std::mt19937_64 engine_;
};

/// Inverse-CDF sampler over exact cumulative integer weights.
class AtomSampler {
 public:
  explicit AtomSampler(const StepDistribution& mu);
  std::size_t draw(StreamRng& rng) const;

 private:
  Integer total_;
  std::vector<Integer> cumulative_;
};

}  // namespace affq
