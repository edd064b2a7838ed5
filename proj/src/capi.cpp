#include "affq/affq.h"

#include <algorithm>
#include <cstring>
#include <optional>
#include <string>

#include "affq/arith.hpp"
#include "affq/config.hpp"
#include "affq/convolution.hpp"
#include "affq/error.hpp"
#include "affq/experiments.hpp"
#include "affq/padic.hpp"

struct affq_measure {
  affq::StepDistribution mu;
};

struct affq_report {
  affq::Report report;
  std::string csv;
  std::string csv_body;
  std::string json;
};

namespace {

thread_local std::string last_error;

template <class Fn>
affq_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return AFFQ_OK;
  } catch (const affq::ConfigError& e) {
    last_error = e.what();
    return AFFQ_CONFIG_ERROR;
  } catch (const affq::BudgetExceeded& e) {
    last_error = e.what();
    return AFFQ_BUDGET_EXCEEDED;
  } catch (const affq::InsufficientPrecision& e) {
    last_error = e.what();
    return AFFQ_PRECISION_ERROR;
  } catch (const affq::DomainError& e) {
    last_error = e.what();
    return AFFQ_DOMAIN_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AFFQ_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return AFFQ_INTERNAL_ERROR;
  }
}

affq_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return AFFQ_DOMAIN_ERROR;
}

affq::ExtendedPrime place_of(uint64_t p) {
  return p == AFFQ_INFINITY ? affq::ExtendedPrime::infinity() : affq::ExtendedPrime(p);
}

}  // namespace

extern "C" {

const char* affq_version(void) { return "1.0.0"; }

const char* affq_last_error(void) { return last_error.c_str(); }

const char* affq_status_name(affq_status status) {
  switch (status) {
    case AFFQ_OK: return "ok";
    case AFFQ_CHECK_FAILED: return "check failed";
    case AFFQ_CONFIG_ERROR: return "config error";
    case AFFQ_BUDGET_EXCEEDED: return "budget exceeded";
    case AFFQ_DOMAIN_ERROR: return "domain error";
    case AFFQ_PRECISION_ERROR: return "insufficient precision";
    case AFFQ_INTERNAL_ERROR: return "internal error";
  }
  return "unknown";
}

affq_status affq_valuation(const char* q, uint64_t p, int64_t* value, int* is_infinite) {
  if (!q || !value || !is_infinite) return null_argument("affq_valuation");
  return guarded([&] {
    const auto v = affq::valuation(affq::Rational::parse(q), p);
    *is_infinite = v.is_infinite() ? 1 : 0;
    *value = v.is_infinite() ? 0 : v.value();
  });
}

affq_status affq_log_norm(const char* q, uint64_t place, double* out) {
  if (!q || !out) return null_argument("affq_log_norm");
  return guarded([&] { *out = affq::log_norm(affq::Rational::parse(q), place_of(place)).value; });
}

affq_status affq_height(const char* q, double* out) {
  if (!q || !out) return null_argument("affq_height");
  return guarded([&] { *out = affq::height(affq::Rational::parse(q)); });
}

affq_status affq_height_plus(const char* q, double* out) {
  if (!q || !out) return null_argument("affq_height_plus");
  return guarded([&] { *out = affq::height_plus(affq::Rational::parse(q)); });
}

affq_status affq_padic_digits(const char* q, uint64_t p, size_t precision, char* buf, size_t buf_size,
                              size_t* needed) {
  if (!q) return null_argument("affq_padic_digits");
  return guarded([&] {
    const auto text = affq::expand(affq::Rational::parse(q), p, precision).render();
    if (needed) *needed = text.size() + 1;
    if (buf && buf_size > 0) {
      const auto n = std::min(buf_size - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

affq_status affq_gauge_count(double k, uint64_t* count) {
  if (!count) return null_argument("affq_gauge_count");
  return guarded([&] { *count = affq::gauge_enumerate(k).size(); });
}

affq_status affq_measure_from_json(const char* json, affq_measure** out) {
  if (!json || !out) return null_argument("affq_measure_from_json");
  *out = nullptr;
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw affq::ConfigError(std::string("measure is not valid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("measure")) doc = doc.at("measure");
    *out = new affq_measure{affq::parse_measure(doc)};
  });
}

void affq_measure_free(affq_measure* mu) { delete mu; }

size_t affq_measure_atom_count(const affq_measure* mu) { return mu ? mu->mu.size() : 0; }

affq_status affq_measure_validate(const affq_measure* mu, int* degenerate) {
  if (!mu || !degenerate) return null_argument("affq_measure_validate");
  return guarded([&] { *degenerate = affq::validate(mu->mu).degenerate ? 1 : 0; });
}

affq_status affq_measure_drift(const affq_measure* mu, uint64_t place, double* out) {
  if (!mu || !out) return null_argument("affq_measure_drift");
  return guarded([&] { *out = affq::drift(mu->mu, place_of(place)); });
}

affq_status affq_measure_contracting_set(const affq_measure* mu, uint64_t* places, size_t capacity, size_t* count) {
  if (!mu || !count) return null_argument("affq_measure_contracting_set");
  return guarded([&] {
    const auto set = affq::contracting_set(mu->mu);
    *count = set.size();
    size_t i = 0;
    for (const auto& p : set) {
      if (!places || i >= capacity) break;
      places[i++] = p.is_infinite() ? AFFQ_INFINITY : p.prime();
    }
  });
}

affq_status affq_measure_entropy(const affq_measure* mu, size_t n, double* out) {
  if (!mu || !out) return null_argument("affq_measure_entropy");
  return guarded([&] { *out = affq::entropy(affq::power(mu->mu, n)); });
}

size_t affq_experiment_count(void) { return affq::experiment_names().size(); }

const char* affq_experiment_name(size_t index) {
  const auto& names = affq::experiment_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

affq_status affq_run(const char* experiment, const char* config_json, const affq_run_options* options,
                     affq_report** out) {
  if (!experiment || !config_json || !out) return null_argument("affq_run");
  *out = nullptr;
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(config_json);
      if (options && options->section_overrides) {
        const auto extra = nlohmann::json::parse(options->section_overrides);
        if (!extra.is_object()) throw affq::ConfigError("section overrides must be a JSON object");
        if (!doc.is_object()) throw affq::ConfigError("config must be a JSON object");
        auto& section = doc[experiment];
        if (section.is_null()) section = nlohmann::json::object();
        if (!section.is_object()) throw affq::ConfigError(std::string("section '") + experiment + "' must be an object");
        section.update(extra);
      }
    } catch (const nlohmann::json::exception& e) {
      throw affq::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    auto cfg = affq::parse_config(doc, experiment);
    if (options) {
      if (options->has_seed) cfg.seed = options->seed;
      if (options->has_replicas) cfg.replicas = options->replicas;
      if (options->threads > 0) cfg.threads = options->threads;
    }
    auto report = affq::run_experiment(cfg);
    auto* handle = new affq_report{std::move(report), {}, {}, {}};
    handle->csv = handle->report.csv();
    handle->csv_body = handle->report.csv_body();
    handle->json = handle->report.json();
    *out = handle;
  });
}

void affq_report_free(affq_report* report) { delete report; }

int affq_report_passed(const affq_report* report) { return report && report->report.passed() ? 1 : 0; }

int affq_report_status(const affq_report* report) {
  return report ? affq::report_status(report->report) : AFFQ_INTERNAL_ERROR;
}

const char* affq_report_csv(const affq_report* report) { return report ? report->csv.c_str() : ""; }
const char* affq_report_csv_body(const affq_report* report) { return report ? report->csv_body.c_str() : ""; }
const char* affq_report_json(const affq_report* report) { return report ? report->json.c_str() : ""; }

}  // extern "C"
