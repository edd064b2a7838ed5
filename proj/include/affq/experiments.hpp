#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affq/config.hpp"
#include "affq/measure.hpp"

namespace affq {

/// One CSV row: (experiment, p, n, seed, statistic, value).
struct ReportRow {
  std::string experiment;
  std::string place;  ///< "", a prime, "inf", or a space-separated set
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::string statistic;
  std::string value;
};

/// A pass/fail comparison of an observed statistic against a bound.
struct Check {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  std::string relation;  ///< "<=", ">=", "<", "within"
  bool passed = false;
};

struct Report {
  std::string experiment;
  nlohmann::json config;
  std::vector<std::uint64_t> seeds;
  std::vector<ReportRow> rows;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  bool budget_exceeded = false;

  bool passed() const;
  void add(std::string place, std::int64_t n, std::uint64_t seed, std::string statistic, std::string value);
  void add(std::string place, std::int64_t n, std::uint64_t seed, std::string statistic, double value);
  Check& check(std::string name, double observed, std::string relation, double bound, bool passed);

  /// Comment header with the resolved config and seeds, then the body.
  std::string csv() const;
  /// Body only: header line plus rows. Identical across reruns of a config.
  std::string csv_body() const;
  std::string json() const;
};

/// Fixed "%.15g" rendering used in every report.
std::string format_double(double x);

/// Exit status for a finished report: 0 pass, 1 a check failed, 3 budget.
int report_status(const Report& r);

Report run_validate(const ExperimentConfig& cfg);
Report run_drift(const ExperimentConfig& cfg);
Report run_gauge(const ExperimentConfig& cfg);
Report run_walk(const ExperimentConfig& cfg);
/// Boundary digits / real intervals per contracting place, with the
/// contraction-rate statistic and probe agreement rate.
Report run_boundary(const ExperimentConfig& cfg);
/// Mean of ⟨A_n⁻¹ q_n⟩/n along the grid.
Report run_lemma41(const ExperimentConfig& cfg);
/// Frequency of ⟨Z_n⟩⁺_P / n <= Σ_P φ_p⁺ + ε.
Report run_lemma43(const ExperimentConfig& cfg);
/// Frequency of ‖x_n⁻¹ π_n(ẑ)‖ / n <= Σ_{p∉P} φ_p⁻ + ε.
Report run_prop44(const ExperimentConfig& cfg);
/// H_n for n <= n_max from exact convolution powers.
Report run_entropy(const ExperimentConfig& cfg);
/// Mean of M_n^p / n for every non-contracting place in cfg.places.
Report run_divergence(const ExperimentConfig& cfg);

/// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Dispatches on cfg.experiment. Throws ConfigError for unknown names.
Report run_experiment(const ExperimentConfig& cfg);

}  // namespace affq
