#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affq/arith.hpp"
#include "affq/measure.hpp"

namespace affq {

/// Parses the measure block: a JSON array of {"a": "num/den", "b": ..., "w": ...}.
/// Rejected unless the weights are positive and sum to exactly 1.
StepDistribution parse_measure(const nlohmann::json& block);
nlohmann::json measure_to_json(const StepDistribution& mu);

/// Fully resolved parameters for one experiment. Every field has a default,
/// and to_json() writes all of them so reports are self-describing.
struct ExperimentConfig {
  std::string experiment;
  std::optional<StepDistribution> measure;

  std::uint64_t seed = 1;
  std::size_t replicas = 100;
  std::size_t threads = 1;

  std::vector<std::size_t> n_grid{125, 250, 500, 1000, 2000};
  std::size_t n = 2000;
  std::optional<PlaceSet> places;  ///< unset: experiment default (usually P*)
  double epsilon = 0.1;
  double threshold = 0.95;         ///< minimum event frequency
  double final_bound = 0.05 * 0.6931471805599453;  ///< lln41 final-mean bound

  std::size_t stab_factor = 4;     ///< prop44: stabilize at stab_factor × max n
  std::size_t margin = 32;
  std::int64_t padic_exponent = 16;
  std::size_t digits = 16;
  double real_tolerance = 1e-9;
  double probe_agreement = 0.99;   ///< minimum probe agreement rate
  double rate_tolerance = 0.10;    ///< relative error on contraction rates
  double abs_tolerance = 0.05;     ///< absolute error on divergence means

  double k = 0.6931471805599453;   ///< gauge radius
  double k_cap = 5.0;
  std::size_t n_max = 12;          ///< entropy
  std::size_t budget = 10'000'000;

  nlohmann::json to_json() const;
};

/// Reads the experiment's section (and the shared "measure", "seed",
/// "replicas", "threads" keys) from a config document. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::string& experiment);
ExperimentConfig parse_config_text(const std::string& text, const std::string& experiment);

std::string place_set_str(const PlaceSet& places);

}  // namespace affq
