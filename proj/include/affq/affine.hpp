#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "affq/arith.hpp"
#include "affq/rational.hpp"

namespace affq {

/// x ↦ a·x + b with a ≠ 0.
class AffineMap {
 public:
  AffineMap() : a_(1), b_(0) {}
  /// Throws DomainError if a = 0.
  AffineMap(Rational a, Rational b);

  static AffineMap identity() { return {}; }
  /// Parses "a=num/den;b=num/den".
  static AffineMap parse(std::string_view text);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  /// "a=num/den;b=num/den"
  std::string str() const;
  /// Short canonical key "num/den;num/den" used for convolution tables.
  std::string key() const { return a_.str() + ";" + b_.str(); }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
  friend auto operator<=>(const AffineMap&, const AffineMap&) = default;

 private:
  Rational a_;
  Rational b_;
};

/// (g∘h)(x) = g(h(x)) = (a_g a_h, a_g b_h + b_g).
AffineMap compose(const AffineMap& g, const AffineMap& h);
AffineMap inverse(const AffineMap& g);
Rational act(const AffineMap& g, const Rational& z);

/// Element (a, (z_p)_p) of Q* × A with exact-rational coordinates. The
/// coordinate at p is overrides[p] when present and the diagonal value
/// otherwise; embedded affinities carry only a diagonal.
class HPoint {
 public:
  HPoint() : a_(1), diagonal_(0) {}
  HPoint(Rational a, Rational diagonal, PlaceVector overrides = {});

  const Rational& a() const { return a_; }
  const Rational& diagonal() const { return diagonal_; }
  const PlaceVector& overrides() const { return overrides_; }
  bool is_diagonal() const { return overrides_.empty(); }
  /// Coordinate z_p.
  const Rational& coordinate(ExtendedPrime p) const;

  friend bool operator==(const HPoint&, const HPoint&) = default;

 private:
  Rational a_;
  Rational diagonal_;
  PlaceVector overrides_;
};

HPoint embed(const AffineMap& g);
HPoint h_compose(const HPoint& y1, const HPoint& y2);
HPoint h_inverse(const HPoint& y);

/// ⟨a⟩ + ⟨z⟩⁺, the translation height summed over every place.
double adelic_length(const HPoint& y);

/// Slack used when comparing a float gauge radius against lengths built
/// from integer logarithms.
inline constexpr double kGaugeTolerance = 1e-12;

/// ‖g⁻¹·y‖ <= k.
bool gauge_member(const AffineMap& g, const HPoint& y, double k);

inline constexpr double kDefaultGaugeCap = 5.0;

/// Every g with ‖g⁻¹‖ <= k, sorted and duplicate-free. Built by listing
/// the pairs (±r/s, b) with ln(rs) + ⟨b⟩⁺ <= k and inverting them. Throws DomainError if k exceeds cap or is
/// negative.
std::vector<AffineMap> gauge_enumerate(double k, double cap = kDefaultGaugeCap);

/// Counting bound 2e^{2k}(2e^{2k}+1) on the identity-centred gauge.
double gauge_count_bound(double k);

}  // namespace affq
