#include "affq/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "affq/error.hpp"

namespace affq {

StepDistribution::StepDistribution(std::vector<Atom> atoms) {
  if (atoms.empty()) throw ConfigError("step distribution has no atoms");
  Rational total(0);
  for (const auto& atom : atoms) {
    if (atom.weight.sign() <= 0) throw ConfigError("non-positive weight " + atom.weight.str());
    total += atom.weight;
  }
  if (total != Rational(1)) throw ConfigError("weights sum to " + total.str() + ", not 1");

  std::map<AffineMap, Rational> merged;
  for (auto& atom : atoms) merged[atom.map] += atom.weight;
  for (auto& [map, weight] : merged) atoms_.push_back({map, weight});

  weight_den_ = 1;
  for (const auto& atom : atoms_) mpz_lcm(weight_den_.get_mpz_t(), weight_den_.get_mpz_t(), atom.weight.denominator().get_mpz_t());
  for (const auto& atom : atoms_) {
    integer_weights_.push_back(atom.weight.numerator() * (weight_den_ / atom.weight.denominator()));
  }
}

std::string StepDistribution::str() const {
  std::ostringstream os;
  for (const auto& atom : atoms_) os << atom.map.str() << ";w=" << atom.weight.str() << '\n';
  return os.str();
}

ValidationReport validate(const StepDistribution& mu) {
  ValidationReport report;
  const auto& atoms = mu.atoms();
  report.all_unit_slope = std::all_of(atoms.begin(), atoms.end(), [](const Atom& at) { return at.map.a() == Rational(1); });
  if (report.all_unit_slope) {
    report.degenerate = true;
    report.reason = "every atom has a = 1";
    return report;
  }
  const auto pivot = std::find_if(atoms.begin(), atoms.end(), [](const Atom& at) { return at.map.a() != Rational(1); });
  const Rational z = pivot->map.b() / (Rational(1) - pivot->map.a());
  const bool shared = std::all_of(atoms.begin(), atoms.end(), [&](const Atom& at) { return act(at.map, z) == z; });
  if (shared) {
    report.degenerate = true;
    report.common_fixed_point = z;
    report.reason = "every atom fixes z = " + z.str();
  }
  return report;
}

namespace {

// Exact sign of Σ_p e_p·ln p for rational e_p.
int sign_of_log_combination(const std::map<std::uint64_t, Rational>& rates) {
  Integer lcm = 1;
  for (const auto& [p, c] : rates) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
  double bits = 0.0;
  for (const auto& [p, c] : rates) {
    bits += std::fabs((c * Rational(lcm, Integer(1))).to_double()) * std::log2(static_cast<double>(p));
  }
  if (bits > 1e7) {
    double s = 0.0;
    for (const auto& [p, c] : rates) s += c.to_double() * std::log(static_cast<double>(p));
    return (s > 0) - (s < 0);
  }
  Integer lhs = 1, rhs = 1;
  for (const auto& [p, c] : rates) {
    const Integer e = (c * Rational(lcm, Integer(1))).numerator();
    Integer term;
    const Integer prime(static_cast<unsigned long>(p));
    mpz_pow_ui(term.get_mpz_t(), prime.get_mpz_t(), mpz_get_ui(Integer(::abs(e)).get_mpz_t()));
    (sgn(e) > 0 ? lhs : rhs) *= term;
  }
  return cmp(lhs, rhs) > 0 ? 1 : (cmp(lhs, rhs) < 0 ? -1 : 0);
}

}  // namespace

DriftProfile::DriftProfile(const StepDistribution& mu) {
  std::set<std::uint64_t> primes;
  for (const auto& atom : mu.atoms()) {
    for (auto p : prime_factors(atom.map.a().numerator())) primes.insert(p);
    for (auto p : prime_factors(atom.map.a().denominator())) primes.insert(p);
  }
  for (auto p : primes) {
    Rational rate(0);
    for (const auto& atom : mu.atoms()) rate += atom.weight * Rational(valuation(atom.map.a(), p).value());
    if (rate.is_zero()) continue;
    finite_[p] = -rate.to_double() * std::log(static_cast<double>(p));
    rates_.emplace(p, std::move(rate));
  }
  for (const auto& atom : mu.atoms()) infinite_ += atom.weight.to_double() * log_norm(atom.map.a(), ExtendedPrime::infinity()).value;
  // φ_∞ = Σ_p c_p·ln p exactly, so its sign is a comparison of integers.
  infinite_sign_ = sign_of_log_combination(rates_);
}

double DriftProfile::phi(ExtendedPrime p) const {
  if (p.is_infinite()) return infinite_;
  const auto it = finite_.find(p.prime());
  return it == finite_.end() ? 0.0 : it->second;
}

int DriftProfile::sign(ExtendedPrime p) const {
  if (p.is_infinite()) return infinite_sign_;
  const auto it = rates_.find(p.prime());
  return it == rates_.end() ? 0 : -it->second.sign();
}

Rational DriftProfile::log_rate(std::uint64_t p) const {
  const auto it = rates_.find(p);
  return it == rates_.end() ? Rational(0) : -it->second;
}

double DriftProfile::product_formula_residual() const {
  double s = infinite_;
  for (const auto& [p, phi] : finite_) s += phi;
  return s;
}

PlaceSet DriftProfile::support() const {
  PlaceSet out;
  for (const auto& [p, rate] : rates_) out.insert(ExtendedPrime(p));
  if (infinite_sign_ != 0) out.insert(ExtendedPrime::infinity());
  return out;
}

double drift(const StepDistribution& mu, ExtendedPrime p) { return DriftProfile(mu).phi(p); }

DriftProfile drift_profile(const StepDistribution& mu) { return DriftProfile(mu); }

PlaceSet contracting_set(const DriftProfile& profile) {
  PlaceSet out;
  for (const auto& p : profile.support()) {
    if (profile.sign(p) < 0) out.insert(p);
  }
  return out;
}

PlaceSet contracting_set(const StepDistribution& mu) { return contracting_set(DriftProfile(mu)); }

double first_moment(const StepDistribution& mu) {
  double total = 0.0;
  for (const auto& atom : mu.atoms()) {
    total += atom.weight.to_double() * (height(atom.map.a()) + height_plus(atom.map.b()));
  }
  return total;
}

Rational q_n(const DriftProfile& profile, std::int64_t n) {
  if (n < 0) throw DomainError("q_n needs n >= 0");
  Rational out(1);
  for (const auto& [p, rate] : profile.valuation_rates()) {
    // floor(n·φ_p/ln p) with φ_p/ln p = -c_p exactly.
    const Integer e = floor(Rational(n) * -rate);
    out *= power(Integer(static_cast<unsigned long>(p)), -mpz_get_si(e.get_mpz_t()));
  }
  return out;
}

StepDistribution reflect(const StepDistribution& mu) {
  std::vector<Atom> atoms;
  for (const auto& atom : mu.atoms()) atoms.push_back({inverse(atom.map), atom.weight});
  return StepDistribution(std::move(atoms));
}

}  // namespace affq
