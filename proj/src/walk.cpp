#include "affq/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "affq/error.hpp"
#include "affq/parallel.hpp"

namespace affq {

Walker::Walker(const StepDistribution& mu, std::uint64_t seed, WalkLimits limits)
    : mu_(&mu), sampler_(mu), rng_(seed), limits_(limits) {}

const AffineMap& Walker::step() {
  last_ = mu_->atoms()[sampler_.draw(rng_)].map;
  position_ = compose(position_, last_);
  ++steps_;
  if (position_.b().bit_size() > limits_.max_bits) {
    throw BudgetExceeded("translation part exceeded the bit-size guard at step " + std::to_string(steps_),
                         position_.b().bit_size());
  }
  return last_;
}

Trajectory sample_path(const StepDistribution& mu, std::size_t n, std::uint64_t seed, WalkLimits limits) {
  const auto report = validate(mu);
  if (report.degenerate) throw DomainError("degenerate step distribution: " + report.reason);
  Trajectory t;
  t.seed = seed;
  t.steps.reserve(n);
  t.prefix.reserve(n + 1);
  Walker walker(mu, seed, limits);
  t.prefix.push_back(walker.position());
  for (std::size_t i = 0; i < n; ++i) {
    t.steps.push_back(walker.step());
    t.prefix.push_back(walker.position());
  }
  return t;
}

AffineMap recompute_prefix(const Trajectory& t) {
  AffineMap x;
  for (const auto& g : t.steps) x = compose(x, g);
  return x;
}

namespace {

// Smallest v_p(b) over atoms with b != 0; nullopt when every b is 0.
std::optional<std::int64_t> min_translation_valuation(const StepDistribution& mu, std::uint64_t p) {
  std::optional<std::int64_t> out;
  for (const auto& atom : mu.atoms()) {
    if (atom.map.b().is_zero()) continue;
    const auto v = valuation(atom.map.b(), p).value();
    out = out ? std::min(*out, v) : v;
  }
  return out;
}

void check_step_cap(const Walker& walker) {
  if (walker.steps() >= walker.limits().max_steps) {
    throw BudgetExceeded("boundary point did not stabilize within the step cap", walker.steps());
  }
}

std::int64_t valuation_or(const Rational& q, std::uint64_t p, std::int64_t fallback) {
  return q.is_zero() ? fallback : valuation(q, p).value();
}

// TargetFn maps the current Z_n to the exponent E at which Z_n must agree
// with the limit.
template <class TargetFn>
StabilizedPoint stabilize_padic_impl(Walker& walker, std::uint64_t p, TargetFn target, std::size_t margin) {
  StabilizedPoint out;
  const auto min_b = min_translation_valuation(walker.measure(), p);
  if (!min_b) {
    out.representative = walker.position().b();
    out.stabilization_index = walker.steps();
    out.probe_agreed = true;
    return out;
  }
  std::size_t run = 0;
  for (;;) {
    const auto exponent = target(walker.position().b());
    const auto va = valuation(walker.position().a(), p).value();
    run = (va >= exponent - *min_b + 1) ? run + 1 : 0;
    if (run >= margin) break;
    check_step_cap(walker);
    walker.step();
  }
  out.representative = walker.position().b();
  out.stabilization_index = walker.steps();
  const auto exponent = target(out.representative);
  for (std::size_t i = 0; i < margin; ++i) walker.step();
  const Rational moved = walker.position().b() - out.representative;
  out.probe_agreed = moved.is_zero() || valuation(moved, p).value() >= exponent;
  return out;
}

StabilizedPoint stabilize_real_log(Walker& walker, double log_tol, std::size_t margin) {
  StabilizedPoint out;
  double b_max = 0.0;
  for (const auto& atom : walker.measure().atoms()) b_max = std::max(b_max, std::fabs(atom.map.b().to_double()));
  if (b_max == 0.0) {
    out.representative = walker.position().b();
    out.stabilization_index = walker.steps();
    out.probe_agreed = true;
    return out;
  }
  const double phi = DriftProfile(walker.measure()).infinite_drift();
  // Expected geometric tail factor at half the contraction rate.
  const double log_tail = -std::log1p(-std::exp(phi / 2.0));
  const double log_half_tol = log_tol - std::log(2.0);
  std::size_t run = 0;
  for (;;) {
    const double la = log_norm(walker.position().a(), ExtendedPrime::infinity()).value;
    run = (la + std::log(b_max) + log_tail < log_half_tol) ? run + 1 : 0;
    if (run >= margin) break;
    check_step_cap(walker);
    walker.step();
  }
  out.representative = walker.position().b();
  out.stabilization_index = walker.steps();
  for (std::size_t i = 0; i < margin; ++i) walker.step();
  const Rational moved = walker.position().b() - out.representative;
  out.probe_agreed = moved.is_zero() || log_norm(moved, ExtendedPrime::infinity()).value <= log_half_tol;
  return out;
}

void require_contracting(const StepDistribution& mu, ExtendedPrime p) {
  if (DriftProfile(mu).sign(p) >= 0) {
    throw DomainError("place " + p.str() + " is not contracting (drift >= 0)");
  }
}

}  // namespace

StabilizedPoint stabilize_padic(Walker& walker, std::uint64_t p, std::int64_t target_exponent, std::size_t margin) {
  return stabilize_padic_impl(walker, p, [&](const Rational&) { return target_exponent; }, margin);
}

StabilizedPoint stabilize_real(Walker& walker, double tol, std::size_t margin) {
  if (!(tol > 0.0)) throw DomainError("real tolerance must be positive");
  return stabilize_real_log(walker, std::log(tol), margin);
}

PadicBoundary boundary_digits(const StepDistribution& mu, std::uint64_t p, std::size_t digits, std::uint64_t seed,
                              std::size_t margin, WalkLimits limits) {
  if (digits == 0) throw DomainError("need at least one digit");
  require_contracting(mu, ExtendedPrime(p));
  Walker walker(mu, seed, limits);
  const auto n = static_cast<std::int64_t>(digits);
  // The first N digits end at exponent start + N; never ask for less than N.
  auto target = [&](const Rational& z) { return std::max(n, valuation_or(z, p, 0) + n); };
  PadicBoundary out;
  out.point = stabilize_padic_impl(walker, p, target, margin);
  out.expansion = expand(out.point.representative, p, digits);
  return out;
}

RealInterval outward_interval(const Rational& q, double half_width) {
  const double x = q.to_double();
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {std::nextafter(std::nextafter(x, -inf) - half_width, -inf),
          std::nextafter(std::nextafter(x, inf) + half_width, inf)};
}

RealBoundary real_limit(const StepDistribution& mu, double tol, std::uint64_t seed, std::size_t margin,
                        WalkLimits limits) {
  if (!(tol > 0.0)) throw DomainError("real tolerance must be positive");
  require_contracting(mu, ExtendedPrime::infinity());
  Walker walker(mu, seed, limits);
  RealBoundary out;
  out.point = stabilize_real_log(walker, std::log(tol), margin);
  out.interval = outward_interval(out.point.representative, tol / 2.0);
  return out;
}

BoundarySample extract_boundary(Walker& walker, const PlaceSet& places, const BoundaryRequest& request) {
  const DriftProfile profile(walker.measure());
  for (const auto& p : places) {
    if (profile.sign(p) >= 0) throw DomainError("place " + p.str() + " is not contracting (drift >= 0)");
  }
  while (walker.steps() < request.min_index) walker.step();
  const AffineMap anchor = walker.position();

  BoundarySample out;
  for (const auto& p : places) {
    StabilizedPoint point;
    if (p.is_infinite()) {
      // Precision relative to x_n: scale the tolerance by |A_n| when it is small.
      const double la = log_norm(anchor.a(), p).value;
      const double log_tol = std::log(request.real_tolerance) + std::min(0.0, la);
      point = stabilize_real_log(walker, log_tol, request.margin);
      out.real_coordinate = outward_interval(point.representative, request.real_tolerance / 2.0 * std::min(1.0, std::exp(la)));
    } else {
      const auto prime = p.prime();
      const auto va = valuation(anchor.a(), prime).value();
      const std::int64_t exponent = std::max<std::int64_t>(0, va) + request.padic_exponent;
      point = stabilize_padic(walker, prime, exponent, request.margin);
      const auto start = valuation_or(point.representative, prime, exponent);
      const auto count = static_cast<std::size_t>(std::max<std::int64_t>(1, exponent - start));
      out.digits.emplace(prime, expand(point.representative, prime, count));
    }
    if (!point.probe_agreed) ++out.probe_misses;
    out.stabilization_index = std::max(out.stabilization_index, point.stabilization_index);
    out.representatives.emplace(p, point.representative);
  }
  out.anchor_index = request.min_index;
  return out;
}

PlaceVector tail_point(const AffineMap& x_n, std::size_t n, const BoundarySample& boundary, const PlaceSet& places) {
  if (n > boundary.anchor_index) {
    throw InsufficientPrecision("boundary was stabilized relative to step " + std::to_string(boundary.anchor_index) +
                                ", tail point requested at step " + std::to_string(n));
  }
  PlaceVector out;
  const Rational inv = x_n.a().reciprocal();
  for (const auto& p : places) {
    const auto it = boundary.representatives.find(p);
    if (it == boundary.representatives.end()) {
      throw InsufficientPrecision("boundary sample has no coordinate at " + p.str());
    }
    out.emplace(p, inv * (it->second - x_n.b()));
  }
  return out;
}

double BallHistogram::max_mass() const {
  std::size_t best = 0;
  for (const auto& [k, c] : counts) best = std::max(best, c);
  return samples ? static_cast<double>(best) / static_cast<double>(samples) : 0.0;
}

double RealHistogram::max_mass() const {
  std::size_t best = 0;
  for (const auto& [k, c] : counts) best = std::max(best, c);
  return samples ? static_cast<double>(best) / static_cast<double>(samples) : 0.0;
}

BallKey ball_of(const Rational& z, std::uint64_t p, std::int64_t radius_exponent) {
  const auto start = valuation_or(z, p, radius_exponent);
  const auto count = static_cast<std::size_t>(std::max<std::int64_t>(1, radius_exponent - start));
  return ball_key(expand(z, p, count), radius_exponent);
}

BallHistogram empirical_measure(const StepDistribution& mu, std::uint64_t p, std::int64_t radius_exponent,
                                std::size_t samples, std::uint64_t seed, std::size_t threads, std::size_t margin,
                                WalkLimits limits) {
  require_contracting(mu, ExtendedPrime(p));
  struct Sample {
    BallKey key;
    bool agreed = false;
  };
  const auto results = parallel_map(samples, threads, [&](std::size_t i) {
    Walker walker(mu, derive_seed(seed, i), limits);
    const auto point = stabilize_padic(walker, p, radius_exponent, margin);
    return Sample{ball_of(point.representative, p, radius_exponent), point.probe_agreed};
  });
  BallHistogram out;
  out.samples = samples;
  for (const auto& s : results) {
    ++out.counts[s.key];
    if (!s.agreed) ++out.probe_misses;
  }
  return out;
}

RealHistogram empirical_real_measure(const StepDistribution& mu, double bin_width, std::size_t samples,
                                     std::uint64_t seed, std::size_t threads, WalkLimits limits) {
  if (!(bin_width > 0.0)) throw DomainError("bin width must be positive");
  require_contracting(mu, ExtendedPrime::infinity());
  const auto bins = parallel_map(samples, threads, [&](std::size_t i) {
    Walker walker(mu, derive_seed(seed, i), limits);
    const auto point = stabilize_real(walker, bin_width * 1e-3);
    return static_cast<std::int64_t>(std::floor(point.representative.to_double() / bin_width));
  });
  RealHistogram out;
  out.samples = samples;
  for (auto b : bins) ++out.counts[b];
  return out;
}

double increment_log_rate(const StepDistribution& mu, ExtendedPrime p, std::size_t n, std::uint64_t seed,
                          WalkLimits limits) {
  if (n == 0) throw DomainError("increment rate needs n >= 1");
  if (std::all_of(mu.atoms().begin(), mu.atoms().end(), [](const Atom& at) { return at.map.b().is_zero(); })) {
    throw DomainError("every translation is zero; Z never moves");
  }
  Walker walker(mu, seed, limits);
  while (walker.steps() < n) walker.step();
  const Rational z_n = walker.position().b();
  do {
    check_step_cap(walker);
    walker.step();
  } while (walker.position().b() == z_n);
  return -log_norm(walker.position().b() - z_n, p).value / static_cast<double>(n);
}

double partial_sum_maximum(const StepDistribution& mu, ExtendedPrime p, std::size_t n, std::uint64_t seed) {
  std::vector<double> log_a, log_b;
  constexpr double minus_inf = -std::numeric_limits<double>::infinity();
  for (const auto& atom : mu.atoms()) {
    log_a.push_back(log_norm(atom.map.a(), p).value);
    log_b.push_back(atom.map.b().is_zero() ? minus_inf : log_norm(atom.map.b(), p).value);
  }
  const AtomSampler sampler(mu);
  StreamRng rng(seed);
  double partial = 0.0;  // ln|A_{k-1}|_p
  double best = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto i = sampler.draw(rng);
    best = std::max(best, partial + log_b[i]);
    partial += log_a[i];
  }
  return best;
}

DivergenceResult divergence_diagnostic(const StepDistribution& mu, ExtendedPrime p, std::size_t n,
                                       std::size_t replicas, std::uint64_t seed, std::size_t threads) {
  if (DriftProfile(mu).sign(p) < 0) {
    throw DomainError("place " + p.str() + " contracts; use boundary extraction instead");
  }
  if (n == 0) throw DomainError("divergence diagnostic needs n >= 1");
  DivergenceResult out;
  out.per_replica = parallel_map(replicas, threads, [&](std::size_t i) {
    return partial_sum_maximum(mu, p, n, derive_seed(seed, i)) / static_cast<double>(n);
  });
  for (double v : out.per_replica) out.mean += v;
  if (replicas) out.mean /= static_cast<double>(replicas);
  return out;
}

}  // namespace affq
