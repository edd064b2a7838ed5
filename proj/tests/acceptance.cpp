// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "affq/affine.hpp"
#include "affq/arith.hpp"
#include "affq/convolution.hpp"
#include "affq/experiments.hpp"
#include "affq/measure.hpp"
#include "affq/parallel.hpp"
#include "affq/rng.hpp"
#include "affq/walk.hpp"

using namespace affq;

namespace {

const double kLn2 = std::log(2.0);

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [violated: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.passed = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!out.passed) ++failures;
  std::printf("%s %2d %s:%s (%.2fs)\n", out.passed ? "PASS" : "FAIL", id, title.c_str(), out.detail.str().c_str(),
              secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational rat(const char* s) { return Rational::parse(s); }

StepDistribution two_atoms(const char* a1, const char* b1, const char* w1, const char* a2, const char* b2,
                           const char* w2) {
  return StepDistribution({{AffineMap(rat(a1), rat(b1)), rat(w1)}, {AffineMap(rat(a2), rat(b2)), rat(w2)}});
}

const StepDistribution& mu_bias() {
  static const auto mu = two_atoms("2", "0", "1/4", "1/2", "1", "3/4");
  return mu;
}
const StepDistribution& mu_rev() {
  static const auto mu = two_atoms("2", "0", "3/4", "1/2", "1", "1/4");
  return mu;
}
const StepDistribution& mu_sym() {
  static const auto mu = two_atoms("2", "0", "1/2", "1/2", "1", "1/2");
  return mu;
}

std::size_t worker_count() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

ExperimentConfig config(const std::string& experiment, const StepDistribution& mu) {
  ExperimentConfig cfg = parse_config(nlohmann::json::object(), experiment);
  cfg.measure = mu;
  cfg.threads = worker_count();
  return cfg;
}

double check_value(const Report& r, const std::string& name, bool* passed) {
  for (const auto& c : r.checks) {
    if (c.name == name) {
      *passed = c.passed;
      return c.observed;
    }
  }
  *passed = false;
  return NAN;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t in(std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_); }
  Rational rational(std::uint64_t limit) {
    Integer num = Integer(std::to_string(in(1, limit)));
    if (engine_() & 1) num = -num;
    return {num, Integer(std::to_string(in(1, limit)))};
  }

 private:
  std::mt19937_64 engine_;
};

// Exhaustive list of (a, b) with ln(rs) + ln max(|u|, v) <= k, over small
// numerators and denominators; the gauge is the set of inverses.
std::set<AffineMap> gauge_oracle(double k) {
  std::set<AffineMap> out;
  const long lim = 8;
  for (long r = 1; r <= lim; ++r) {
    for (long s = 1; s <= lim; ++s) {
      if (std::gcd(r, s) != 1) continue;
      const double ha = std::log(static_cast<double>(r * s));
      if (ha > k + 1e-12) continue;
      for (long sa : {1L, -1L}) {
        const Rational a(Integer(sa * r), Integer(s));
        out.insert(inverse(AffineMap(a, Rational(0))));
        for (long u = 1; u <= lim; ++u) {
          for (long v = 1; v <= lim; ++v) {
            if (std::gcd(u, v) != 1 || ha + std::log(static_cast<double>(std::max(u, v))) > k + 1e-12) continue;
            for (long sb : {1L, -1L}) out.insert(inverse(AffineMap(a, Rational(Integer(sb * u), Integer(v)))));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

int main() {
  std::printf("acceptance: %zu worker threads\n", worker_count());

  criterion(1, "product formula on 10^4 rationals up to 10^18", [](Outcome& o) {
    Rng rng(1001);
    std::size_t identity_fail = 0;
    double worst = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 10000; ++i) {
      const Rational q = rng.rational(1'000'000'000'000'000'000ULL);
      Rational rebuilt(1);
      double sum = log_norm(q, ExtendedPrime::infinity()).value;
      std::set<std::uint64_t> primes;
      for (auto p : prime_factors(q.numerator())) primes.insert(p);
      for (auto p : prime_factors(q.denominator())) primes.insert(p);
      for (auto p : primes) {
        rebuilt *= power(Integer(static_cast<unsigned long>(p)), valuation(q, p).value());
        sum += log_norm(q, ExtendedPrime(p)).value;
      }
      if (rebuilt != q.abs()) ++identity_fail;
      worst = std::max(worst, std::abs(sum));
    }
    const double secs = seconds_since(t0);
    o.detail << " identity failures " << identity_fail << ", max |sum ln|q|_v| " << worst << ", " << secs << " s";
    o.require(identity_fail == 0, "exact identity");
    o.require(worst < 1e-9, "log sum < 1e-9");
    o.require(secs < 5.0, "runtime < 5 s");
  });

  criterion(2, "height sandwich and multiplicativity on 10^4 pairs", [](Outcome& o) {
    Rng rng(1002);
    std::size_t violations = 0;
    for (int i = 0; i < 10000; ++i) {
      const Rational x = rng.rational(1'000'000'000'000'000'000ULL);
      const Rational y = rng.rational(1'000'000'000'000'000'000ULL);
      for (const Rational& q : {x, y}) {
        if (height(q) / 2 > height_plus(q) + 1e-12 || height_plus(q) > height(q) + 1e-12) ++violations;
      }
      if (height(x * y) > height(x) + height(y) + 1e-12) ++violations;
    }
    o.detail << " violations " << violations;
    o.require(violations == 0, "zero violations");
  });

  criterion(3, "quasi-subadditivity on 10^4 embedded pairs", [](Outcome& o) {
    Rng rng(1003);
    std::size_t violations = 0;
    double tightest = INFINITY;
    for (int i = 0; i < 10000; ++i) {
      // Mix small and large entries so both regimes are exercised.
      const std::uint64_t lim = (i % 2) ? 20 : 1'000'000'000'000ULL;
      const HPoint y1 = embed(AffineMap(rng.rational(lim), (i % 7 == 0) ? Rational(0) : rng.rational(lim)));
      const HPoint y2 = embed(AffineMap(rng.rational(lim), (i % 5 == 0) ? Rational(0) : rng.rational(lim)));
      const double slack = kLn2 + 2 * adelic_length(y1) + adelic_length(y2) - adelic_length(h_compose(y1, y2));
      tightest = std::min(tightest, slack);
      if (slack < -1e-9) ++violations;
    }
    o.detail << " violations " << violations << ", min slack " << tightest;
    o.require(violations == 0, "zero violations");
  });

  criterion(4, "gauge enumeration counts and growth bound", [](Outcome& o) {
    const auto g0 = gauge_enumerate(0.0);
    const auto g1 = gauge_enumerate(kLn2);
    const auto oracle0 = gauge_oracle(0.0);
    const auto oracle1 = gauge_oracle(kLn2);
    o.detail << " |G_0| = " << g0.size() << " (oracle " << oracle0.size() << "), |G_ln2| = " << g1.size() << " (oracle "
             << oracle1.size() << ")";
    o.require(g0.size() == 6 && oracle0.size() == 6, "|G_0| = 6");
    o.require(g1.size() == 26 && oracle1.size() == 26, "|G_ln2| = 26");
    o.require(std::set<AffineMap>(g1.begin(), g1.end()) == oracle1, "G_ln2 matches oracle");
    for (double k : {0.0, kLn2, 1.0, 2.0, 3.0}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto count = gauge_enumerate(k).size();
      const double secs = seconds_since(t0);
      const double bound = gauge_count_bound(k);
      o.detail << "; k=" << k << ": " << count << " <= " << bound;
      o.require(static_cast<double>(count) <= bound, "bound at k=" + std::to_string(k));
      if (k == 3.0) {
        o.detail << " in " << secs << " s";
        o.require(secs < 30.0, "runtime < 30 s at k=3");
      }
    }
  });

  criterion(5, "drift profiles of mu_bias and mu_rev", [](Outcome& o) {
    const ExtendedPrime two(2), inf = ExtendedPrime::infinity();
    const DriftProfile bias(mu_bias());
    // Exact: c_2 = E v_2(a) = 1/4 - 3/4, so φ_2 = (1/2) ln 2; no other prime divides a slope.
    o.require(bias.log_rate(2) == rat("1/2"), "phi_2 = (1/2) ln 2 exactly");
    o.require(bias.valuation_rates().size() == 1, "no other finite drift");
    o.require(bias.sign(inf) == -1 && std::abs(bias.phi(inf) + 0.5 * kLn2) < 1e-15, "phi_inf = -(1/2) ln 2");
    o.require(std::abs(bias.product_formula_residual()) < 1e-15, "drifts sum to zero over all places");
    o.require(contracting_set(bias) == PlaceSet{inf}, "P* = {inf}");

    const DriftProfile mirrored(reflect(mu_bias()));
    o.require(mirrored.log_rate(2) == -bias.log_rate(2), "reflect negates phi_2");
    o.require(mirrored.sign(inf) == 1, "reflect negates phi_inf");
    o.require(contracting_set(mirrored) == PlaceSet{two}, "P*(reflect) = {2}");
    const DriftProfile rev(mu_rev());
    o.require(rev.log_rate(2) == rat("-1/2") && rev.sign(inf) == 1, "mu_rev drifts mirrored");
    o.require(std::abs(rev.phi(inf) - 0.5 * kLn2) < 1e-15, "mu_rev phi_inf");
    o.require(contracting_set(rev) == PlaceSet{two}, "P*(mu_rev) = {2}");
    o.detail << " bias: phi_2 " << bias.phi(two) << ", phi_inf " << bias.phi(inf) << ", residual "
             << bias.product_formula_residual() << "; rev: phi_2 " << rev.phi(two) << ", phi_inf " << rev.phi(inf);
  });

  criterion(6, "boundary contraction for mu_rev at p=2", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    auto cfg = config("boundary", mu_rev());
    cfg.n = 2000;
    cfg.replicas = 100;
    cfg.margin = 32;
    const Report r = run_boundary(cfg);
    bool rate_ok = false, probe_ok = false;
    const double rel = check_value(r, "increment_rate_2", &rate_ok);
    const double agree = check_value(r, "probe_agreement_2", &probe_ok);
    // Probe agreement over 10^3 further seeds at the same margin.
    const auto probes = parallel_map(1000, worker_count(), [&](std::size_t i) {
      return boundary_digits(mu_rev(), 2, 16, derive_seed(6006, i), 32).point.probe_agreed ? 1 : 0;
    });
    const double agree_1000 = std::accumulate(probes.begin(), probes.end(), 0.0) / 1000.0;
    const double secs = seconds_since(t0);
    o.detail << " relative error of mean rate " << rel << ", probe agreement " << agree << " (100 seeds), "
             << agree_1000 << " (1000 seeds), " << secs << " s";
    o.require(rate_ok && rel <= 0.10, "rate within 10%");
    o.require(probe_ok && agree >= 0.99 && agree_1000 >= 0.99, "probe agreement >= 99%");
    o.require(secs < 120.0, "runtime < 2 min");
  });

  criterion(7, "divergence statistic M_n/n at p=2", [](Outcome& o) {
    const auto bias = divergence_diagnostic(mu_bias(), ExtendedPrime(2), 2000, 100, 7007, worker_count());
    const auto sym = divergence_diagnostic(mu_sym(), ExtendedPrime(2), 2000, 100, 7007, worker_count());
    o.detail << " mu_bias " << bias.mean << " vs " << 0.5 * kLn2 << ", mu_sym " << sym.mean << " vs 0";
    o.require(std::abs(bias.mean - 0.5 * kLn2) <= 0.05, "mu_bias within 0.05");
    o.require(std::abs(sym.mean) <= 0.05, "mu_sym within 0.05");
  });

  criterion(8, "lln41: mean of <A_n^-1 q_n>/n decreases and ends below 0.05 ln 2", [](Outcome& o) {
    auto cfg = config("lln41", mu_bias());
    cfg.replicas = 100;
    cfg.n_grid = {125, 250, 500, 1000, 2000, 4000};
    cfg.final_bound = 0.05 * kLn2;
    const Report r = run_lemma41(cfg);
    std::vector<double> means;
    for (const auto& row : r.rows) {
      if (row.statistic == "mean") means.push_back(std::stod(row.value));
    }
    o.detail << " means";
    for (double m : means) o.detail << " " << m;
    bool ok = false;
    check_value(r, "mean_decreasing", &ok);
    o.require(ok && std::is_sorted(means.rbegin(), means.rend()), "decreasing");
    o.require(means.size() == 6 && means.back() < 0.05 * kLn2, "final mean < 0.05 ln 2");
  });

  criterion(9, "lln43: event frequency for mu_bias, P={2}", [](Outcome& o) {
    auto cfg = config("lln43", mu_bias());
    cfg.replicas = 200;
    cfg.n_grid = {250, 500, 1000};
    cfg.places = PlaceSet{ExtendedPrime(2)};
    cfg.epsilon = 0.1;
    cfg.threshold = 0.95;
    const Report r = run_lemma43(cfg);
    bool ok = false;
    const double freq = check_value(r, "event_frequency", &ok);
    o.detail << " frequency at n=1000: " << freq << " (bound (1/2)ln2 + 0.1)";
    o.require(ok && freq >= 0.95, "frequency >= 0.95");
  });

  criterion(10, "prop44: event frequency for mu_rev, P={2}", [](Outcome& o) {
    auto cfg = config("prop44", mu_rev());
    cfg.replicas = 200;
    cfg.n_grid = {250, 500, 1000};
    cfg.places = PlaceSet{ExtendedPrime(2)};
    cfg.epsilon = 0.15;
    cfg.threshold = 0.9;
    const Report r = run_prop44(cfg);
    bool ok = false, probe_ok = false;
    const double freq = check_value(r, "event_frequency", &ok);
    const double miss = check_value(r, "probe_miss_rate", &probe_ok);
    o.detail << " frequency at n=1000: " << freq << ", probe-miss rate " << miss;
    o.require(ok && freq >= 0.9, "frequency >= 0.9");
    o.require(probe_ok && miss < 0.01, "probe-miss rate < 1%");
  });

  criterion(11, "entropy dichotomy up to n=12", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> hs{0.0}, hb{0.0};
    std::size_t max_support = 0;
    ConvolutionTable ts, tb;
    const ConvolutionTable step_s(mu_sym()), step_b(mu_bias());
    for (std::size_t n = 1; n <= 12; ++n) {
      ts = convolve(ts, step_s);
      tb = convolve(tb, step_b);
      max_support = std::max({max_support, ts.support_size(), tb.support_size()});
      hs.push_back(entropy(ts));
      hb.push_back(entropy(tb));
    }
    // Oracle for H_2: the four products (4,0), (1,2), (1,1), (1/4,3/2) are
    // distinct, each with mass 1/4.
    const ConvolutionTable two = power(mu_sym(), 2);
    bool four_distinct = two.support_size() == 4;
    for (const auto& [key, cell] : two.cells()) four_distinct = four_distinct && cell.probability == rat("1/4");
    const double inc11 = hb[11] - hb[10], inc12 = hb[12] - hb[11];
    const double secs = seconds_since(t0);
    o.detail << " mu_sym H_6/6 " << hs[6] / 6 << ", H_12/12 " << hs[12] / 12 << ", H_2 " << hs[2]
             << "; mu_bias increments " << inc11 << ", " << inc12 << "; max support " << max_support << ", " << secs
             << " s";
    o.require(max_support <= 4096, "support <= 4096");
    o.require(hs[12] / 12 < hs[6] / 6, "H_12/12 < H_6/6 for mu_sym");
    o.require(inc12 > 0 && std::abs(inc12 - inc11) <= 0.1 * inc11, "mu_bias increments flatten");
    o.require(four_distinct && std::abs(hs[2] - std::log(4.0)) < 1e-12, "H_2 = ln 4");
    o.require(secs < 60.0, "runtime < 1 min");
  });

  criterion(12, "tail-point stationarity for mu_rev at p=2, radius 6", [](Outcome& o) {
    const PlaceSet places{ExtendedPrime(2)};
    const std::size_t samples = 10000, n = 50;
    const std::int64_t radius = 6;
    struct Keys {
      BallKey at0;
      BallKey atn;
      bool probe;
    };
    const auto keys = parallel_map(samples, worker_count(), [&](std::size_t i) {
      Walker w(mu_rev(), derive_seed(12012, i));
      while (w.steps() < n) w.step();
      const AffineMap x_n = w.position();
      BoundaryRequest req;
      req.padic_exponent = radius;
      req.min_index = n;
      const BoundarySample b = extract_boundary(w, places, req);
      const Rational t0 = tail_point(AffineMap::identity(), 0, b, places).at(ExtendedPrime(2));
      const Rational tn = tail_point(x_n, n, b, places).at(ExtendedPrime(2));
      return Keys{ball_of(t0, 2, radius), ball_of(tn, 2, radius), b.probe_misses == 0};
    });
    std::map<BallKey, std::size_t> h0, hn;
    std::size_t misses = 0;
    for (const auto& k : keys) {
      ++h0[k.at0];
      ++hn[k.atn];
      if (!k.probe) ++misses;
    }
    const double tv = total_variation(h0, samples, hn, samples);
    o.detail << " TV " << tv << " over " << h0.size() << " / " << hn.size() << " balls, probe misses " << misses;
    o.require(tv < 0.1, "TV < 0.1");
  });

  criterion(13, "reports reproduce byte for byte across runs and worker counts", [](Outcome& o) {
    struct Case {
      std::string experiment;
      const StepDistribution* mu;
    };
    const std::vector<Case> cases{{"validate", &mu_bias()}, {"drift", &mu_bias()},   {"gauge", &mu_sym()},
                                  {"walk", &mu_bias()},     {"boundary", &mu_rev()}, {"lln41", &mu_bias()},
                                  {"lln43", &mu_bias()},    {"prop44", &mu_rev()},   {"entropy", &mu_bias()},
                                  {"divergence", &mu_sym()}, {"prop44", &mu_bias()}, {"boundary", &mu_bias()}};
    std::size_t mismatches = 0;
    for (const auto& c : cases) {
      ExperimentConfig cfg = config(c.experiment, *c.mu);
      cfg.replicas = 24;
      cfg.n_grid = {50, 100, 200};
      cfg.n = 200;
      cfg.n_max = 8;
      cfg.seed = 1313;
      cfg.threads = 1;
      const std::string first = run_experiment(cfg).csv_body();
      const std::string again = run_experiment(cfg).csv_body();
      cfg.threads = 4;
      const std::string four = run_experiment(cfg).csv_body();
      cfg.threads = 7;
      const std::string seven = run_experiment(cfg).csv_body();
      if (first != again || first != four || first != seven) {
        ++mismatches;
        o.detail << " " << c.experiment << " differs;";
      }
    }
    o.detail << " " << cases.size() << " configurations, mismatches " << mismatches;
    o.require(mismatches == 0, "byte-identical bodies");
  });

  std::printf("%s: %d of 13 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
