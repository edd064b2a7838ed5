#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "affq/affine.hpp"
#include "affq/measure.hpp"
#include "affq/padic.hpp"
#include "affq/rng.hpp"

namespace affq {

struct WalkLimits {
  std::size_t max_bits = std::size_t{1} << 22;  ///< bit-size guard on Z_n
  std::size_t max_steps = 1'000'000;            ///< step cap for stabilization loops
};

/// Running product x_n = g_1⋯g_n = (A_n, Z_n) with i.i.d. increments of law
/// mu, drawn from the stream seeded by `seed`.
class Walker {
 public:
  Walker(const StepDistribution& mu, std::uint64_t seed, WalkLimits limits = {});

  /// Draws g_{n+1} and updates x_n. Throws BudgetExceeded when Z_n outgrows
  /// the bit-size guard.
  const AffineMap& step();

  const AffineMap& position() const { return position_; }
  const AffineMap& last_increment() const { return last_; }
  std::size_t steps() const { return steps_; }
  const StepDistribution& measure() const { return *mu_; }
  const WalkLimits& limits() const { return limits_; }

 private:
  const StepDistribution* mu_;
  AtomSampler sampler_;
  StreamRng rng_;
  WalkLimits limits_;
  AffineMap position_;
  AffineMap last_;
  std::size_t steps_ = 0;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::vector<AffineMap> steps;   ///< g_1 .. g_n
  std::vector<AffineMap> prefix;  ///< x_0 = identity .. x_n

  std::size_t length() const { return steps.size(); }
};

/// n steps of the walk. Rejects degenerate mu with DomainError.
Trajectory sample_path(const StepDistribution& mu, std::size_t n, std::uint64_t seed, WalkLimits limits = {});

/// Fold of compose over the increments; equals prefix.back() for any
/// trajectory produced by sample_path.
AffineMap recompute_prefix(const Trajectory& t);

inline constexpr std::size_t kDefaultMargin = 32;

struct StabilizedPoint {
  Rational representative;           ///< Z at the stabilization index
  std::size_t stabilization_index = 0;
  bool probe_agreed = false;         ///< continuation probe matched
};

/// Runs `walker` forward until Z_n agrees with its limit in Q_p modulo
/// p^target_exponent, by requiring v_p(A_n) >= target - min v_p(b) + 1 for
/// `margin` consecutive steps, then probes `margin` further steps. A heuristic
/// with probe, not a certificate. Requires φ_p < 0 unless every b vanishes.
StabilizedPoint stabilize_padic(Walker& walker, std::uint64_t p, std::int64_t target_exponent,
                                std::size_t margin = kDefaultMargin);

/// Same for ∞: runs until |A_n|·max|b|·(1 - e^{φ_∞/2})^{-1} < tol/2 for
/// `margin` consecutive steps, then probes |Z_{n+margin} - Z_n| <= tol/2.
StabilizedPoint stabilize_real(Walker& walker, double tol, std::size_t margin = kDefaultMargin);

struct PadicBoundary {
  PadicExpansion expansion;
  StabilizedPoint point;
};

/// First N digits of the boundary point Z_∞ in Q_p. Requires φ_p < 0.
PadicBoundary boundary_digits(const StepDistribution& mu, std::uint64_t p, std::size_t digits, std::uint64_t seed,
                              std::size_t margin = kDefaultMargin, WalkLimits limits = {});

struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

struct RealBoundary {
  RealInterval interval;
  StabilizedPoint point;
};

/// Interval of width about tol around the real boundary point. Requires φ_∞ < 0.
RealBoundary real_limit(const StepDistribution& mu, double tol, std::uint64_t seed,
                        std::size_t margin = kDefaultMargin, WalkLimits limits = {});

/// Outward-rounded interval [q - half_width, q + half_width].
RealInterval outward_interval(const Rational& q, double half_width);

/// Boundary coordinates of one path for the places of P*.
struct BoundarySample {
  std::map<std::uint64_t, PadicExpansion> digits;  ///< finite places
  std::optional<RealInterval> real_coordinate;     ///< when ∞ is sampled
  PlaceVector representatives;                     ///< exact stabilized Z per place
  std::size_t stabilization_index = 0;             ///< max over places
  std::size_t anchor_index = 0;                    ///< step the precision is relative to
  std::size_t probe_misses = 0;
};

struct BoundaryRequest {
  /// Finite places: Z agrees with the limit mod p^(max(v_p(A_m), 0) + padic_exponent),
  /// with m = min_index.
  std::int64_t padic_exponent = 16;
  /// ∞: agreement within real_tolerance·min(1, |A_m|).
  double real_tolerance = 1e-9;
  std::size_t margin = kDefaultMargin;
  std::size_t min_index = 0;
};

/// Advances `walker` to request.min_index, then on until every place in
/// `places` is stabilized. Precision is relative to x_{min_index}, so tail
/// points at any n <= min_index keep padic_exponent correct exponents.
/// Each place must contract.
BoundarySample extract_boundary(Walker& walker, const PlaceSet& places, const BoundaryRequest& request);

/// A_n^{-1}(ẑ_p - Z_n) per place: the boundary seen from x_n. Throws
/// InsufficientPrecision if n lies beyond the boundary's anchor step.
PlaceVector tail_point(const AffineMap& x_n, std::size_t n, const BoundarySample& boundary, const PlaceSet& places);

/// Key of the ball of radius p^{-radius_exponent} around z.
BallKey ball_of(const Rational& z, std::uint64_t p, std::int64_t radius_exponent);

struct BallHistogram {
  std::map<BallKey, std::size_t> counts;
  std::size_t samples = 0;
  std::size_t probe_misses = 0;
  double max_mass() const;
};

/// Histogram of the boundary law in Q_p over balls of radius
/// p^{-radius_exponent}, from independent replicas seeded by
/// derive_seed(seed, i).
BallHistogram empirical_measure(const StepDistribution& mu, std::uint64_t p, std::int64_t radius_exponent,
                                std::size_t samples, std::uint64_t seed, std::size_t threads = 1,
                                std::size_t margin = kDefaultMargin, WalkLimits limits = {});

struct RealHistogram {
  std::map<std::int64_t, std::size_t> counts;  ///< bin floor(x / width)
  std::size_t samples = 0;
  double max_mass() const;
};

/// Histogram of the real boundary law with bins of the given width.
RealHistogram empirical_real_measure(const StepDistribution& mu, double bin_width, std::size_t samples,
                                     std::uint64_t seed, std::size_t threads = 1, WalkLimits limits = {});

/// Total variation distance between two normalized histograms.
template <class Key>
double total_variation(const std::map<Key, std::size_t>& h1, std::size_t n1, const std::map<Key, std::size_t>& h2,
                       std::size_t n2);

/// -ln|Z_m - Z_n|_p / n where m > n is the first step at which Z moves.
/// For a contracting place this tends to -φ_p.
double increment_log_rate(const StepDistribution& mu, ExtendedPrime p, std::size_t n, std::uint64_t seed,
                          WalkLimits limits = {});

/// max_{k<=n} ln⁺|A_{k-1} b_k|_p for one path, i.e. M_n^p.
double partial_sum_maximum(const StepDistribution& mu, ExtendedPrime p, std::size_t n, std::uint64_t seed);

struct DivergenceResult {
  double mean = 0.0;                 ///< mean of M_n^p / n over replicas
  std::vector<double> per_replica;
};

/// Empirical M_n^p/n for a place with φ_p >= 0; approaches φ_p⁺.
DivergenceResult divergence_diagnostic(const StepDistribution& mu, ExtendedPrime p, std::size_t n,
                                       std::size_t replicas, std::uint64_t seed, std::size_t threads = 1);

template <class Key>
double total_variation(const std::map<Key, std::size_t>& h1, std::size_t n1, const std::map<Key, std::size_t>& h2,
                       std::size_t n2) {
  double tv = 0.0;
  for (const auto& [k, c] : h1) {
    const auto it = h2.find(k);
    const double other = it == h2.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n2);
    tv += std::abs(static_cast<double>(c) / static_cast<double>(n1) - other);
  }
  for (const auto& [k, c] : h2) {
    if (!h1.contains(k)) tv += static_cast<double>(c) / static_cast<double>(n2);
  }
  return tv / 2.0;
}

}  // namespace affq
