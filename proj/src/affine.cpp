#include "affq/affine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "affq/error.hpp"

namespace affq {

AffineMap::AffineMap(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.is_zero()) throw DomainError("affine map with a = 0");
}

AffineMap AffineMap::parse(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ConfigError("bad affine map '" + std::string(text) + "'");
  auto field = [&](std::string_view part, char name) {
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    if (part.size() < 2 || part[0] != name || part[1] != '=') {
      throw ConfigError("bad affine map '" + std::string(text) + "'");
    }
    return Rational::parse(part.substr(2));
  };
  const Rational a = field(text.substr(0, semi), 'a');
  if (a.is_zero()) throw ConfigError("affine map with a = 0");
  return AffineMap(a, field(text.substr(semi + 1), 'b'));
}

std::string AffineMap::str() const { return "a=" + a_.str() + ";b=" + b_.str(); }

AffineMap compose(const AffineMap& g, const AffineMap& h) {
  return AffineMap(g.a() * h.a(), g.a() * h.b() + g.b());
}

AffineMap inverse(const AffineMap& g) {
  const Rational inv = g.a().reciprocal();
  return AffineMap(inv, -(g.b() * inv));
}

Rational act(const AffineMap& g, const Rational& z) { return g.a() * z + g.b(); }

HPoint::HPoint(Rational a, Rational diagonal, PlaceVector overrides)
    : a_(std::move(a)), diagonal_(std::move(diagonal)), overrides_(std::move(overrides)) {
  if (a_.is_zero()) throw DomainError("H point with a = 0");
  std::erase_if(overrides_, [&](const auto& kv) { return kv.second == diagonal_; });
}

const Rational& HPoint::coordinate(ExtendedPrime p) const {
  const auto it = overrides_.find(p);
  return it == overrides_.end() ? diagonal_ : it->second;
}

HPoint embed(const AffineMap& g) { return HPoint(g.a(), g.b()); }

HPoint h_compose(const HPoint& y1, const HPoint& y2) {
  PlaceVector coords;
  for (const auto& [p, z] : y1.overrides()) coords.emplace(p, y1.a() * y2.coordinate(p) + z);
  for (const auto& [p, z] : y2.overrides()) coords.emplace(p, y1.a() * z + y1.coordinate(p));
  return HPoint(y1.a() * y2.a(), y1.a() * y2.diagonal() + y1.diagonal(), std::move(coords));
}

HPoint h_inverse(const HPoint& y) {
  const Rational inv = y.a().reciprocal();
  PlaceVector coords;
  for (const auto& [p, z] : y.overrides()) coords.emplace(p, -(z * inv));
  return HPoint(inv, -(y.diagonal() * inv), std::move(coords));
}

double adelic_length(const HPoint& y) {
  // Closed form for the diagonal, then swap in the overridden places.
  double translation = height_plus(y.diagonal());
  for (const auto& [p, z] : y.overrides()) {
    translation += log_plus_norm(z, p) - log_plus_norm(y.diagonal(), p);
  }
  return height(y.a()) + translation;
}

bool gauge_member(const AffineMap& g, const HPoint& y, double k) {
  return adelic_length(h_compose(h_inverse(embed(g)), y)) <= k + kGaugeTolerance;
}

double gauge_count_bound(double k) {
  const double e2k = std::exp(2.0 * k);
  return 2.0 * e2k * (2.0 * e2k + 1.0);
}

namespace {

// Largest integer m with ln m <= bound (with tolerance), 0 if none.
unsigned long log_floor(double bound) {
  if (bound + kGaugeTolerance < 0.0) return 0;
  return static_cast<unsigned long>(std::floor(std::exp(bound + kGaugeTolerance)));
}

}  // namespace

std::vector<AffineMap> gauge_enumerate(double k, double cap) {
  if (k < 0.0) throw DomainError("negative gauge radius");
  if (k > cap) throw DomainError("gauge radius " + std::to_string(k) + " above cap " + std::to_string(cap));

  std::vector<AffineMap> out;
  const unsigned long product_limit = log_floor(k);
  for (unsigned long r = 1; r <= product_limit; ++r) {
    for (unsigned long s = 1; r * s <= product_limit; ++s) {
      if (std::gcd(r, s) != 1) continue;
      // ⟨r/s⟩ = ln(rs); what remains of k bounds ⟨b⟩⁺ = ln max(r', s').
      const unsigned long max_limit = log_floor(k - std::log(static_cast<double>(r * s)));
      std::vector<Rational> translations{Rational(0)};
      for (unsigned long rb = 1; rb <= max_limit; ++rb) {
        for (unsigned long sb = 1; sb <= max_limit; ++sb) {
          if (std::gcd(rb, sb) != 1) continue;
          const Rational b{Integer(rb), Integer(sb)};
          translations.push_back(b);
          translations.push_back(-b);
        }
      }
      for (int sign : {1, -1}) {
        const Rational a(Integer(static_cast<long>(r) * sign), Integer(s));
        // ‖g⁻¹‖ <= k, so the gauge holds the inverses of the short pairs.
        for (const auto& b : translations) out.push_back(inverse(AffineMap(a, b)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace affq
