#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "affq/affine.hpp"
#include "affq/arith.hpp"

namespace affq {

struct Atom {
  AffineMap map;
  Rational weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite-support probability measure on Aff(Q) with exact rational weights.
/// Atoms are merged and sorted; weights are positive and sum to exactly 1.
class StepDistribution {
 public:
  /// Throws ConfigError on an empty list, a non-positive weight, or a
  /// weight sum other than 1.
  explicit StepDistribution(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  /// Lowest common denominator D of the weights and the integer weights
  /// w_i·D, used for exact inverse-CDF sampling.
  const Integer& weight_denominator() const { return weight_den_; }
  const std::vector<Integer>& integer_weights() const { return integer_weights_; }

  /// One line per atom: "a=..;b=..;w=..".
  std::string str() const;

  friend bool operator==(const StepDistribution& x, const StepDistribution& y) { return x.atoms_ == y.atoms_; }

 private:
  std::vector<Atom> atoms_;
  Integer weight_den_;
  std::vector<Integer> integer_weights_;
};

struct ValidationReport {
  bool degenerate = false;
  bool all_unit_slope = false;           ///< every atom has a = 1
  std::optional<Rational> common_fixed_point;
  std::string reason;
};

/// Non-degeneracy test: degenerate iff every a = 1 or all atoms share a
/// fixed point in Q.
ValidationReport validate(const StepDistribution& mu);

/// Drifts φ_p = E ln|a|_p. Finite primes store the exact rate
/// c_p = E v_p(a), so φ_p = -c_p·ln p and sign tests are exact.
class DriftProfile {
 public:
  explicit DriftProfile(const StepDistribution& mu);

  /// c_p for primes dividing some atom's a; every other prime has c_p = 0.
  const std::map<std::uint64_t, Rational>& valuation_rates() const { return rates_; }
  const std::map<std::uint64_t, double>& finite_drifts() const { return finite_; }
  /// Σ w·ln|a|, computed directly from the atoms.
  double infinite_drift() const { return infinite_; }

  double phi(ExtendedPrime p) const;
  /// Exact sign of φ_p.
  int sign(ExtendedPrime p) const;
  /// φ_p / ln p = -c_p as an exact rational (finite p only).
  Rational log_rate(std::uint64_t p) const;

  /// φ_∞ + Σ φ_p, which vanishes by the product formula.
  double product_formula_residual() const;

  /// Primes with φ_p != 0, plus ∞ when φ_∞ != 0.
  PlaceSet support() const;

 private:
  std::map<std::uint64_t, Rational> rates_;
  std::map<std::uint64_t, double> finite_;
  double infinite_ = 0.0;
  int infinite_sign_ = 0;
};

double drift(const StepDistribution& mu, ExtendedPrime p);
DriftProfile drift_profile(const StepDistribution& mu);

/// Places with strictly negative drift.
PlaceSet contracting_set(const DriftProfile& profile);
PlaceSet contracting_set(const StepDistribution& mu);

/// E[⟨a⟩ + ⟨b⟩⁺].
double first_moment(const StepDistribution& mu);

/// Π_p p^(-floor(n·φ_p/ln p)), the rational whose p-norms track A_n.
Rational q_n(const DriftProfile& profile, std::int64_t n);

/// Image of mu under g ↦ g⁻¹.
StepDistribution reflect(const StepDistribution& mu);

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }
inline double negative_part(double x) { return x < 0.0 ? -x : 0.0; }

}  // namespace affq
