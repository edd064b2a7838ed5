#include <doctest.h>

#include <cmath>

#include "affq/convolution.hpp"
#include "affq/error.hpp"
#include "affq/measure.hpp"
#include "support.hpp"

using namespace affq;
using affq_test::aff;
using affq_test::rat;

namespace {

const double kLn2 = std::log(2.0);
const ExtendedPrime kTwo(2);
const ExtendedPrime kInf = ExtendedPrime::infinity();

// Law of g_1⋯g_n by enumerating all |supp|^n words.
std::map<AffineMap, Rational> word_oracle(const StepDistribution& mu, std::size_t n) {
  std::map<AffineMap, Rational> law{{AffineMap::identity(), Rational(1)}};
  for (std::size_t i = 0; i < n; ++i) {
    std::map<AffineMap, Rational> next;
    for (const auto& [g, w] : law) {
      for (const auto& atom : mu.atoms()) next[compose(g, atom.map)] += w * atom.weight;
    }
    law = std::move(next);
  }
  return law;
}

}  // namespace

TEST_CASE("step distribution construction") {
  const auto mu = affq_test::two_atoms("2", "0", "1/3", "2", "0", "2/3");
  CHECK(mu.size() == 1);
  CHECK(mu.atoms()[0].weight == Rational(1));
  CHECK_THROWS_AS(affq_test::two_atoms("2", "0", "1/2", "1/2", "1", "1/3"), ConfigError);
  CHECK_THROWS_AS(affq_test::two_atoms("2", "0", "0", "1/2", "1", "1"), ConfigError);
  CHECK_THROWS_AS(StepDistribution({}), ConfigError);
  const auto bias = affq_test::mu_bias();
  CHECK(bias.weight_denominator() == 4);
  // Sorted atoms: (1/2,1) with 3/4 comes first.
  CHECK(bias.integer_weights() == std::vector<Integer>{3, 1});
}

TEST_CASE("validate examples") {
  CHECK(validate(affq_test::two_atoms("1", "1", "1/2", "1", "2", "1/2")).degenerate);
  CHECK(validate(affq_test::two_atoms("1", "1", "1/2", "1", "2", "1/2")).all_unit_slope);
  const auto fixed = validate(StepDistribution({{aff("2", "0"), Rational(1)}}));
  CHECK(fixed.degenerate);
  CHECK(fixed.common_fixed_point == Rational(0));
  CHECK_FALSE(validate(affq_test::mu_sym()).degenerate);
  // Shared fixed point 1 for x ↦ 2x - 1 and x ↦ 3x - 2.
  CHECK(validate(affq_test::two_atoms("2", "-1", "1/2", "3", "-2", "1/2")).degenerate);
  // Translation mixed with a dilation has no common fixed point.
  CHECK_FALSE(validate(affq_test::two_atoms("1", "1", "1/2", "2", "0", "1/2")).degenerate);
}

TEST_CASE("drift profiles of the reference measures") {
  const auto bias = drift_profile(affq_test::mu_bias());
  CHECK(bias.phi(kTwo) == doctest::Approx(0.5 * kLn2));
  CHECK(bias.phi(kInf) == doctest::Approx(-0.5 * kLn2));
  CHECK(bias.phi(ExtendedPrime(3)) == 0.0);
  CHECK(bias.log_rate(2) == rat("1/2"));
  CHECK(bias.sign(kTwo) == 1);
  CHECK(bias.sign(kInf) == -1);
  CHECK(std::abs(bias.product_formula_residual()) <= 1e-12);
  CHECK(contracting_set(bias) == PlaceSet{kInf});

  CHECK(contracting_set(affq_test::mu_rev()) == PlaceSet{kTwo});
  CHECK(contracting_set(affq_test::mu_sym()).empty());
  const auto sym = drift_profile(affq_test::mu_sym());
  CHECK(sym.sign(kTwo) == 0);
  CHECK(sym.sign(kInf) == 0);
  CHECK(sym.support().empty());
}

TEST_CASE("drift sign at infinity is exact") {
  // (1/3)·ln 4 + (2/3)·ln(1/2) cancels exactly.
  const auto mu = affq_test::two_atoms("4", "0", "1/3", "1/2", "1", "2/3");
  const auto prof = drift_profile(mu);
  CHECK(prof.sign(kInf) == 0);
  CHECK(prof.sign(kTwo) == 0);
  const auto mixed = affq_test::two_atoms("3", "0", "1/2", "1/2", "1", "1/2");
  CHECK(drift_profile(mixed).sign(kInf) == 1);
  CHECK(contracting_set(mixed) == PlaceSet{ExtendedPrime(3)});
}

TEST_CASE("product formula on random measures") {
  affq_test::RationalGen gen(53);
  for (int i = 0; i < 200; ++i) {
    std::vector<Atom> atoms;
    const std::size_t k = 1 + gen.below(4);
    for (std::size_t j = 0; j < k; ++j) {
      atoms.push_back({AffineMap(gen.nonzero(500), gen.any(500)), Rational(Integer(1), Integer(k))});
    }
    const DriftProfile prof{StepDistribution(atoms)};
    CHECK(std::abs(prof.product_formula_residual()) <= 1e-12);
    const DriftProfile reflected{reflect(StepDistribution(atoms))};
    for (const auto& [p, c] : prof.valuation_rates()) CHECK(reflected.log_rate(p) == -prof.log_rate(p));
  }
}

TEST_CASE("first_moment examples") {
  CHECK(first_moment(affq_test::mu_sym()) == doctest::Approx(kLn2));
  CHECK(first_moment(affq_test::mu_bias()) == doctest::Approx(kLn2));
  CHECK(first_moment(StepDistribution({{aff("1", "1"), Rational(1)}})) == 0.0);
}

TEST_CASE("q_n examples") {
  CHECK(q_n(drift_profile(affq_test::mu_rev()), 10) == Rational(32));
  CHECK(q_n(drift_profile(affq_test::mu_sym()), 7) == Rational(1));
  CHECK(q_n(drift_profile(affq_test::mu_bias()), 3) == rat("1/2"));
  CHECK(q_n(drift_profile(affq_test::mu_bias()), 0) == Rational(1));
}

TEST_CASE("reflect examples") {
  const auto r = reflect(affq_test::mu_bias());
  CHECK(r == affq_test::two_atoms("1/2", "0", "1/4", "2", "-2", "3/4"));
  CHECK(drift(r, kTwo) == doctest::Approx(-0.5 * kLn2));
  CHECK(drift_profile(reflect(affq_test::mu_sym())).support().empty());
  CHECK(reflect(r) == affq_test::mu_bias());
}

TEST_CASE("convolution powers") {
  const auto sym = affq_test::mu_sym();
  const auto t2 = power(sym, 2);
  CHECK(t2.support_size() == 4);
  for (const auto& g : {aff("4", "0"), aff("1", "2"), aff("1", "1"), aff("1/4", "3/2")}) {
    CHECK(t2.probability(g) == rat("1/4"));
  }
  const auto t0 = power(sym, 0);
  CHECK(t0.support_size() == 1);
  CHECK(t0.probability(AffineMap::identity()) == Rational(1));
  const auto t1 = power(sym, 1);
  CHECK(t1.support_size() == 2);
  for (const auto& a : sym.atoms()) CHECK(t1.probability(a.map) == a.weight);

  CHECK(entropy(t0) == 0.0);
  CHECK(entropy(t1) == doctest::Approx(kLn2));
  CHECK(entropy(t2) == doctest::Approx(std::log(4.0)));
}

TEST_CASE("convolution agrees with word enumeration") {
  const auto mu = affq_test::two_atoms("2", "1", "1/3", "1/3", "-1", "2/3");
  for (std::size_t n : {3, 6}) {
    const auto table = power(mu, n);
    const auto oracle = word_oracle(mu, n);
    CHECK(table.support_size() == oracle.size());
    Rational total(0);
    for (const auto& [g, w] : oracle) {
      CHECK(table.probability(g) == w);
      total += w;
    }
    CHECK(total == Rational(1));
  }
}

TEST_CASE("entropy is subadditive and reflection-invariant") {
  const auto bias = affq_test::mu_bias();
  std::vector<double> h{0.0};
  for (std::size_t n = 1; n <= 8; ++n) h.push_back(entropy(power(bias, n)));
  for (std::size_t m = 1; m <= 8; ++m) {
    for (std::size_t n = 1; m + n <= 8; ++n) CHECK(h[m + n] <= h[m] + h[n] + 1e-9);
  }
  CHECK(entropy(reflect(power(bias, 5))) == doctest::Approx(h[5]));
  const auto big = power(bias, 4);
  CHECK_THROWS_AS(convolve(big, big, 10), BudgetExceeded);
}
