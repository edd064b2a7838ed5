#include "affq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "affq/convolution.hpp"
#include "affq/error.hpp"
#include "affq/parallel.hpp"
#include "affq/rng.hpp"
#include "affq/walk.hpp"

namespace affq {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
  return buf;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void Report::add(std::string place, std::int64_t n, std::uint64_t seed, std::string statistic, std::string value) {
  rows.push_back({experiment, std::move(place), n, seed, std::move(statistic), std::move(value)});
}

void Report::add(std::string place, std::int64_t n, std::uint64_t seed, std::string statistic, double value) {
  add(std::move(place), n, seed, std::move(statistic), format_double(value));
}

Check& Report::check(std::string name, double observed, std::string relation, double bound, bool ok) {
  checks.push_back({std::move(name), observed, bound, std::move(relation), ok});
  return checks.back();
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string Report::csv_body() const {
  std::ostringstream os;
  os << "experiment,p,n,seed,statistic,value\n";
  for (const auto& r : rows) {
    os << csv_field(r.experiment) << ',' << csv_field(r.place) << ',' << r.n << ',' << r.seed << ','
       << csv_field(r.statistic) << ',' << csv_field(r.value) << '\n';
  }
  for (const auto& c : checks) {
    os << csv_field(experiment) << ",,0," << (seeds.empty() ? 0 : seeds.front()) << ','
       << csv_field("check:" + c.name) << ',' << (c.passed ? "pass" : "fail") << '\n';
  }
  return os.str();
}

std::string Report::csv() const {
  std::ostringstream os;
  os << "# experiment: " << experiment << '\n';
  os << "# config: " << config.dump() << '\n';
  os << "# seeds:";
  for (auto s : seeds) os << ' ' << s;
  os << '\n';
  for (const auto& c : checks) {
    os << "# check " << c.name << ": observed " << format_double(c.observed) << ' ' << c.relation << ' '
       << format_double(c.bound) << " -> " << (c.passed ? "PASS" : "FAIL") << '\n';
  }
  for (const auto& note : notes) os << "# note: " << note << '\n';
  os << csv_body();
  return os.str();
}

std::string Report::json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["config"] = config;
  j["seeds"] = seeds;
  auto rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"p", r.place}, {"n", r.n}, {"seed", r.seed}, {"statistic", r.statistic}, {"value", r.value}});
  }
  j["rows"] = rows_json;
  auto checks_json = nlohmann::json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"observed", format_double(c.observed)},
                           {"relation", c.relation},
                           {"bound", format_double(c.bound)},
                           {"passed", c.passed}});
  }
  j["checks"] = checks_json;
  j["notes"] = notes;
  j["budget_exceeded"] = budget_exceeded;
  j["passed"] = passed();
  return j.dump(2) + "\n";
}

int report_status(const Report& r) {
  if (r.budget_exceeded) return 3;
  return r.passed() ? 0 : 1;
}

namespace {

const StepDistribution& require_measure(const ExperimentConfig& cfg) {
  if (!cfg.measure) throw ConfigError("experiment '" + cfg.experiment + "' needs a 'measure' block");
  return *cfg.measure;
}

Report start(const ExperimentConfig& cfg) {
  Report r;
  r.experiment = cfg.experiment;
  r.config = cfg.to_json();
  return r;
}

std::vector<std::uint64_t> replica_seeds(const ExperimentConfig& cfg) {
  std::vector<std::uint64_t> seeds(cfg.replicas);
  for (std::size_t i = 0; i < cfg.replicas; ++i) seeds[i] = derive_seed(cfg.seed, i);
  return seeds;
}

std::vector<std::size_t> sorted_grid(const ExperimentConfig& cfg) {
  auto grid = cfg.n_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Nearest-rank empirical quantile.
double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::min(v.size() - 1, rank == 0 ? 0 : rank - 1)];
}

void add_summary(Report& r, const std::string& place, std::size_t n, std::uint64_t seed,
                 const std::vector<double>& values) {
  r.add(place, static_cast<std::int64_t>(n), seed, "mean", mean_of(values));
  r.add(place, static_cast<std::int64_t>(n), seed, "q05", quantile(values, 0.05));
  r.add(place, static_cast<std::int64_t>(n), seed, "q50", quantile(values, 0.50));
  r.add(place, static_cast<std::int64_t>(n), seed, "q95", quantile(values, 0.95));
}

// Places at which the step law's slope has a prime factor, plus ∞.
PlaceSet slope_places(const StepDistribution& mu) {
  PlaceSet out{ExtendedPrime::infinity()};
  for (const auto& atom : mu.atoms()) {
    for (auto p : prime_factors(atom.map.a().numerator())) out.insert(ExtendedPrime(p));
    for (auto p : prime_factors(atom.map.a().denominator())) out.insert(ExtendedPrime(p));
  }
  return out;
}

}  // namespace

Report run_validate(const ExperimentConfig& cfg) {
  const auto& mu = require_measure(cfg);
  Report r = start(cfg);
  r.seeds = {cfg.seed};
  const auto v = validate(mu);
  r.add("", 0, cfg.seed, "atoms", std::to_string(mu.size()));
  r.add("", 0, cfg.seed, "degenerate", v.degenerate ? "1" : "0");
  if (v.common_fixed_point) r.add("", 0, cfg.seed, "common_fixed_point", v.common_fixed_point->str());
  if (v.degenerate) r.notes.push_back(v.reason);
  r.check("non_degenerate", v.degenerate ? 1.0 : 0.0, "==", 0.0, !v.degenerate);
  return r;
}

Report run_drift(const ExperimentConfig& cfg) {
  const auto& mu = require_measure(cfg);
  Report r = start(cfg);
  r.seeds = {cfg.seed};
  const DriftProfile profile(mu);
  PlaceSet places = profile.support();
  places.insert(ExtendedPrime::infinity());
  for (const auto& p : places) {
    r.add(p.str(), 0, cfg.seed, "phi", profile.phi(p));
    if (!p.is_infinite()) r.add(p.str(), 0, cfg.seed, "valuation_rate", (-profile.log_rate(p.prime())).str());
    r.add(p.str(), 0, cfg.seed, "sign", std::to_string(profile.sign(p)));
  }
  r.add("", 0, cfg.seed, "contracting_set", place_set_str(contracting_set(profile)));
  r.add("", 0, cfg.seed, "first_moment", first_moment(mu));
  const double residual = profile.product_formula_residual();
  r.add("", 0, cfg.seed, "product_formula_residual", residual);
  r.check("product_formula", std::fabs(residual), "<=", 1e-12, std::fabs(residual) <= 1e-12);
  return r;
}

Report run_gauge(const ExperimentConfig& cfg) {
  Report r = start(cfg);
  r.seeds = {cfg.seed};
  const auto elements = gauge_enumerate(cfg.k, cfg.k_cap);
  const double bound = gauge_count_bound(cfg.k);
  r.add("", 0, cfg.seed, "k", cfg.k);
  r.add("", 0, cfg.seed, "count", std::to_string(elements.size()));
  r.add("", 0, cfg.seed, "bound", bound);
  for (const auto& g : elements) r.add("", 0, cfg.seed, "element", g.str());
  const auto count = static_cast<double>(elements.size());
  r.check("growth_bound", count, "<=", bound, count <= bound);
  return r;
}

Report run_walk(const ExperimentConfig& cfg) {
  const auto& mu = require_measure(cfg);
  Report r = start(cfg);
  r.seeds = replica_seeds(cfg);
  auto paths = parallel_map(r.seeds.size(), cfg.threads, [&](std::size_t i) { return sample_path(mu, cfg.n, r.seeds[i]); });
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& t = paths[i];
    for (std::size_t n = 0; n < t.prefix.size(); ++n) {
      r.add("", static_cast<std::int64_t>(n), t.seed, "A", t.prefix[n].a().str());
      r.add("", static_cast<std::int64_t>(n), t.seed, "Z", t.prefix[n].b().str());
    }
    if (recompute_prefix(t) != t.prefix.back()) ++mismatches;
  }
  r.check("prefix_fold", static_cast<double>(mismatches), "==", 0.0, mismatches == 0);
  return r;
}

Report run_boundary(const ExperimentConfig& cfg) {
  const auto& mu = require_measure(cfg);
  Report r = start(cfg);
  r.seeds = replica_seeds(cfg);
  const DriftProfile profile(mu);
  const PlaceSet star = contracting_set(profile);
  const PlaceSet places = cfg.places.value_or(star);
  for (const auto& p : places) {
    if (!star.contains(p)) throw ConfigError("place " + p.str() + " is not in the contracting set");
  }
  if (places.empty()) r.notes.push_back("contracting set is empty: the boundary is a single point");

  for (const auto& p : places) {
    struct Out {
      std::vector<ReportRow> rows;
      double rate = 0.0;
      bool agreed = false;
    };
    const auto results = parallel_map(r.seeds.size(), cfg.threads, [&](std::size_t i) {
      const auto seed = r.seeds[i];
      Out o;
      const auto add = [&](std::string stat, std::string value) {
        o.rows.push_back({cfg.experiment, p.str(), 0, seed, std::move(stat), std::move(value)});
      };
      StabilizedPoint point;
      if (p.is_infinite()) {
        const auto b = real_limit(mu, cfg.real_tolerance, seed, cfg.margin);
        add("lo", format_double(b.interval.lo));
        add("hi", format_double(b.interval.hi));
        point = b.point;
      } else {
        const auto b = boundary_digits(mu, p.prime(), cfg.digits, seed, cfg.margin);
        add("digits", b.expansion.render());
        point = b.point;
      }
      add("representative", point.representative.str());
      add("stabilization_index", std::to_string(point.stabilization_index));
      add("probe", point.probe_agreed ? "1" : "0");
      o.agreed = point.probe_agreed;
      o.rate = increment_log_rate(mu, p, cfg.n, seed);
      o.rows.push_back({cfg.experiment, p.str(), static_cast<std::int64_t>(cfg.n), seed, "increment_rate",
                        format_double(o.rate)});
      return o;
    });
    std::vector<double> rates;
    std::size_t agreed = 0;
    for (const auto& o : results) {
      r.rows.insert(r.rows.end(), o.rows.begin(), o.rows.end());
      rates.push_back(o.rate);
      agreed += o.agreed ? 1 : 0;
    }
    const double expected = -profile.phi(p);
    const double mean = mean_of(rates);
    const double agreement = results.empty() ? 1.0 : static_cast<double>(agreed) / static_cast<double>(results.size());
    add_summary(r, p.str(), cfg.n, cfg.seed, rates);
    r.add(p.str(), static_cast<std::int64_t>(cfg.n), cfg.seed, "expected_rate", expected);
    r.add(p.str(), 0, cfg.seed, "probe_agreement", agreement);
    const double rel = std::fabs(mean - expected) / std::fabs(expected);
    r.check("increment_rate_" + p.str(), rel, "<=", cfg.rate_tolerance, rel <= cfg.rate_tolerance);
    r.check("probe_agreement_" + p.str(), agreement, ">=", cfg.probe_agreement, agreement >= cfg.probe_agreement);
  }
  return r;
}

Report run_lemma41(const ExperimentConfig& cfg) {
  const auto& mu = require_measure(cfg);
  Report r = start(cfg);
  r.seeds = replica_seeds(cfg);
  const DriftProfile profile(mu);
  const auto grid = sorted_grid(cfg);
  const auto paths = parallel_map(r.seeds.size(), cfg.threads, [&](std::size_t i) {
    Walker walker(mu, r.seeds[i]);
    std::vector<double> stats;
    for (auto n : grid) {
      while (walker.steps() < n) walker.step();
      stats.push_back(height(q_n(profile, static_cast<std::int64_t>(n)) / walker.position().a()) / static_cast<double>(n));
    }
    return stats;
  });
  std::vector<double> means;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::vector<double> column;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      column.push_back(paths[i][j]);
      r.add("", static_cast<std::int64_t>(grid[j]), r.seeds[i], "stat", paths[i][j]);
    }
    add_summary(r, "", grid[j], cfg.seed, column);
    means.push_back(mean_of(column));
  }
  std::size_t increases = 0;
  for (std::size_t j = 1; j < means.size(); ++j) increases += means[j] > means[j - 1] ? 1 : 0;
  r.check("mean_decreasing", static_cast<double>(increases), "==", 0.0, increases == 0);
  r.check("final_mean", means.back(), "<", cfg.final_bound, means.back() < cfg.final_bound);
  return r;
}

Report run_lemma43(const ExperimentConfig& cfg) {
  const auto& mu = require_measure(cfg);
  Report r = start(cfg);
  r.seeds = replica_seeds(cfg);
  const DriftProfile profile(mu);
  const PlaceSet places = cfg.places.value_or(profile.support());
  const auto grid = sorted_grid(cfg);
  double bound = cfg.epsilon;
  for (const auto& p : places) bound += positive_part(profile.phi(p));
  const auto label = place_set_str(places);

  const auto paths = parallel_map(r.seeds.size(), cfg.threads, [&](std::size_t i) {
    Walker walker(mu, r.seeds[i]);
    std::vector<double> stats;
    for (auto n : grid) {
      while (walker.steps() < n) walker.step();
      PlaceVector z;
      for (const auto& p : places) z.emplace(p, walker.position().b());
      stats.push_back(partial_height_plus(z, places) / static_cast<double>(n));
    }
    return stats;
  });
  double final_frequency = 1.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::vector<double> column;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      column.push_back(paths[i][j]);
      hits += paths[i][j] <= bound ? 1 : 0;
      r.add(label, static_cast<std::int64_t>(grid[j]), r.seeds[i], "stat", paths[i][j]);
    }
    final_frequency = paths.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(paths.size());
    add_summary(r, label, grid[j], cfg.seed, column);
    r.add(label, static_cast<std::int64_t>(grid[j]), cfg.seed, "frequency", final_frequency);
  }
  r.add(label, 0, cfg.seed, "bound", bound);
  r.check("event_frequency", final_frequency, ">=", cfg.threshold, final_frequency >= cfg.threshold);
  return r;
}

Report run_prop44(const ExperimentConfig& cfg) {
  const auto& mu = require_measure(cfg);
  Report r = start(cfg);
  r.seeds = replica_seeds(cfg);
  const DriftProfile profile(mu);
  const PlaceSet star = contracting_set(profile);
  const PlaceSet places = cfg.places.value_or(star);
  for (const auto& p : places) {
    if (!star.contains(p)) throw ConfigError("place " + p.str() + " is not in the contracting set");
  }
  const auto grid = sorted_grid(cfg);
  double bound = cfg.epsilon;
  PlaceSet complement = profile.support();
  complement.insert(ExtendedPrime::infinity());
  for (const auto& p : complement) {
    if (!places.contains(p)) bound += negative_part(profile.phi(p));
  }
  const auto label = place_set_str(places);
  const std::size_t stab_index = cfg.stab_factor * grid.back();

  struct PathResult {
    std::vector<double> total, lemma41, boundary;
    std::size_t probe_misses = 0;
    bool failed = false;
    std::string failure;
  };
  const auto paths = parallel_map(r.seeds.size(), cfg.threads, [&](std::size_t i) {
    PathResult out;
    Walker walker(mu, r.seeds[i]);
    std::vector<AffineMap> positions;
    try {
      for (auto n : grid) {
        while (walker.steps() < n) walker.step();
        positions.push_back(walker.position());
      }
      BoundarySample sample;
      if (!places.empty()) {
        BoundaryRequest request;
        request.padic_exponent = cfg.padic_exponent;
        request.real_tolerance = cfg.real_tolerance;
        request.margin = cfg.margin;
        request.min_index = stab_index;
        sample = extract_boundary(walker, places, request);
      }
      out.probe_misses = sample.probe_misses;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto n = static_cast<double>(grid[j]);
        const Rational q = q_n(profile, static_cast<std::int64_t>(grid[j]));
        // x_n⁻¹·π_n(ẑ) with π_n(ẑ) = (q_n, ẑ on P and 0 elsewhere).
        const HPoint y = h_compose(h_inverse(embed(positions[j])), HPoint(q, Rational(0), sample.representatives));
        double boundary_part = 0.0;
        for (const auto& p : places) boundary_part += log_plus_norm(y.coordinate(p), p);
        out.total.push_back(adelic_length(y) / n);
        out.lemma41.push_back(height(y.a()) / n);
        out.boundary.push_back(boundary_part / n);
      }
    } catch (const BudgetExceeded& e) {
      out.failed = true;
      out.failure = e.what();
    }
    return out;
  });

  std::size_t failures = 0, misses = 0;
  for (const auto& pr : paths) {
    failures += pr.failed ? 1 : 0;
    misses += pr.probe_misses;
  }
  double final_frequency = 1.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto n = static_cast<std::int64_t>(grid[j]);
    std::vector<double> column;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto& pr = paths[i];
      if (pr.failed) continue;
      column.push_back(pr.total[j]);
      hits += pr.total[j] <= bound ? 1 : 0;
      r.add(label, n, r.seeds[i], "stat", pr.total[j]);
      r.add(label, n, r.seeds[i], "lemma41_part", pr.lemma41[j]);
      r.add(label, n, r.seeds[i], "boundary_part", pr.boundary[j]);
      r.add(label, n, r.seeds[i], "complement_part", pr.total[j] - pr.lemma41[j] - pr.boundary[j]);
    }
    final_frequency = paths.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(paths.size());
    add_summary(r, label, grid[j], cfg.seed, column);
    r.add(label, n, cfg.seed, "frequency", final_frequency);
  }
  const double attempts = static_cast<double>(paths.size() * places.size());
  const double miss_rate = attempts > 0 ? static_cast<double>(misses) / attempts : 0.0;
  r.add(label, 0, cfg.seed, "bound", bound);
  r.add(label, static_cast<std::int64_t>(stab_index), cfg.seed, "stabilization_index", std::to_string(stab_index));
  r.add(label, 0, cfg.seed, "probe_miss_rate", miss_rate);
  r.add(label, 0, cfg.seed, "stabilization_failures", std::to_string(failures));
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].failed) r.notes.push_back("seed " + std::to_string(r.seeds[i]) + ": " + paths[i].failure);
  }
  r.check("event_frequency", final_frequency, ">=", cfg.threshold, final_frequency >= cfg.threshold);
  r.check("probe_miss_rate", miss_rate, "<", 1.0 - cfg.probe_agreement, miss_rate < 1.0 - cfg.probe_agreement);
  return r;
}

Report run_entropy(const ExperimentConfig& cfg) {
  const auto& mu = require_measure(cfg);
  Report r = start(cfg);
  r.seeds = {cfg.seed};
  std::vector<double> h{0.0};
  ConvolutionTable table;
  const ConvolutionTable step(mu);
  for (std::size_t n = 1; n <= cfg.n_max; ++n) {
    try {
      table = convolve(table, step, cfg.budget);
    } catch (const BudgetExceeded& e) {
      r.budget_exceeded = true;
      r.notes.push_back("table truncated at n = " + std::to_string(n - 1) + ": " + e.what());
      break;
    }
    h.push_back(entropy(table));
    const auto ni = static_cast<std::int64_t>(n);
    r.add("", ni, cfg.seed, "support", std::to_string(table.support_size()));
    r.add("", ni, cfg.seed, "H", h[n]);
    r.add("", ni, cfg.seed, "H_over_n", h[n] / static_cast<double>(n));
    r.add("", ni, cfg.seed, "increment", h[n] - h[n - 1]);
  }
  const std::size_t reached = h.size() - 1;
  double worst = -INFINITY;
  for (std::size_t a = 1; a <= reached; ++a) {
    for (std::size_t b = a; a + b <= reached; ++b) worst = std::max(worst, h[a + b] - h[a] - h[b]);
  }
  if (reached >= 2) r.check("subadditivity", worst, "<=", 1e-9, worst <= 1e-9);
  if (reached >= 4) {
    // Increments over the second half of the table: a positive entropy rate
    // shows up as increments that stop falling.
    const std::size_t from = reached / 2 + 1;
    const double first = h[from] - h[from - 1];
    const double last = h[reached] - h[reached - 1];
    const double drop = first > 0 ? (first - last) / first : 0.0;
    r.add("", static_cast<std::int64_t>(reached), cfg.seed, "late_increment_drop", drop);
    r.add("", static_cast<std::int64_t>(reached), cfg.seed, "rate_trending_to_zero", drop > 0.1 ? "1" : "0");
  }
  return r;
}

Report run_divergence(const ExperimentConfig& cfg) {
  const auto& mu = require_measure(cfg);
  Report r = start(cfg);
  r.seeds = replica_seeds(cfg);
  const DriftProfile profile(mu);
  PlaceSet places;
  if (cfg.places) {
    places = *cfg.places;
  } else {
    for (const auto& p : slope_places(mu)) {
      if (profile.sign(p) >= 0) places.insert(p);
    }
  }
  for (const auto& p : places) {
    const auto result = divergence_diagnostic(mu, p, cfg.n, cfg.replicas, cfg.seed, cfg.threads);
    for (std::size_t i = 0; i < r.seeds.size(); ++i) {
      r.add(p.str(), static_cast<std::int64_t>(cfg.n), r.seeds[i], "stat", result.per_replica[i]);
    }
    add_summary(r, p.str(), cfg.n, cfg.seed, result.per_replica);
    const double expected = positive_part(profile.phi(p));
    r.add(p.str(), static_cast<std::int64_t>(cfg.n), cfg.seed, "expected", expected);
    const double err = std::fabs(result.mean - expected);
    r.check("divergence_" + p.str(), err, "<=", cfg.abs_tolerance, err <= cfg.abs_tolerance);
  }
  return r;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"validate", "drift",  "gauge",   "walk",       "boundary",
                                              "lln41",    "lln43",  "prop44",  "entropy",    "divergence"};
  return names;
}

Report run_experiment(const ExperimentConfig& cfg) {
  const auto& e = cfg.experiment;
  if (e == "validate") return run_validate(cfg);
  if (e == "drift") return run_drift(cfg);
  if (e == "gauge") return run_gauge(cfg);
  if (e == "walk") return run_walk(cfg);
  if (e == "boundary") return run_boundary(cfg);
  if (e == "lln41") return run_lemma41(cfg);
  if (e == "lln43") return run_lemma43(cfg);
  if (e == "prop44") return run_prop44(cfg);
  if (e == "entropy") return run_entropy(cfg);
  if (e == "divergence") return run_divergence(cfg);
  throw ConfigError("unknown experiment '" + e + "'");
}

}  // namespace affq
