// Command-line front end. Links only the C API.
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "affq/affq.h"

namespace {

int exit_code_for(affq_status status) {
  switch (status) {
    case AFFQ_OK: return 0;
    case AFFQ_CHECK_FAILED: return 1;
    case AFFQ_BUDGET_EXCEEDED: return 3;
    default: return 2;
  }
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks on Aff(Q): boundary extraction and law-of-large-numbers checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::size_t replicas = 0;
  std::size_t threads = 1;
  double k = -1.0;

  app.add_option("--config", config_path, "JSON config with the measure block and experiment sections");
  auto* seed_opt = app.add_option("--seed", seed, "Base seed (overrides the config)");
  auto* replicas_opt = app.add_option("--replicas", replicas, "Number of Monte Carlo replicas (overrides the config)");
  app.add_option("--threads", threads, "Worker threads; output does not depend on it")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  const std::map<std::string, std::string> about{
      {"validate", "Non-degeneracy test of the measure"},
      {"drift", "Drift profile, contracting places and product-formula check"},
      {"gauge", "Count the identity gauge of radius k against its growth bound"},
      {"walk", "Sample paths (A_n, Z_n) with the prefix-fold check"},
      {"boundary", "Boundary digits per contracting place, contraction rate and probe agreement"},
      {"lln41", "Mean of <A_n^-1 q_n>/n along the n grid"},
      {"lln43", "Frequency of <Z_n>+_P / n within sum phi+ + epsilon"},
      {"prop44", "Frequency of ||x_n^-1 pi_n(z)|| / n within sum phi- + epsilon"},
      {"entropy", "Exact convolution entropies H_n up to n_max"},
      {"divergence", "Mean of M_n / n at non-contracting places"},
  };
  for (std::size_t i = 0; i < affq_experiment_count(); ++i) {
    const std::string name = affq_experiment_name(i);
    auto* sub = app.add_subcommand(name, about.contains(name) ? about.at(name) : "");
    if (std::string(affq_experiment_name(i)) == "gauge") {
      sub->add_option("--k", k, "Gauge radius (overrides the config)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; any usage error is a config error.
    return app.exit(e) == 0 ? 0 : 2;
  }
  const std::string experiment = app.get_subcommands().front()->get_name();

  std::string config = "{}";
  if (!config_path.empty() && !read_file(config_path, config)) {
    std::cerr << "error: cannot read config " << config_path << "\n";
    return 2;
  }
  affq_run_options options{};
  options.has_seed = seed_opt->count() > 0;
  options.seed = seed;
  options.has_replicas = replicas_opt->count() > 0;
  options.replicas = replicas;
  options.threads = threads;
  std::string overrides;
  if (experiment == "gauge" && k >= 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"k\":" << k << "}";
    overrides = os.str();
    options.section_overrides = overrides.c_str();
  }

  affq_report* report = nullptr;
  const affq_status status = affq_run(experiment.c_str(), config.c_str(), &options, &report);
  if (status != AFFQ_OK) {
    std::cerr << "error (" << affq_status_name(status) << "): " << affq_last_error() << "\n";
    return exit_code_for(status);
  }

  const char* text = format == "json" ? affq_report_json(report) : affq_report_csv(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      affq_report_free(report);
      return 2;
    }
    out << text;
  }
  const int code = affq_report_status(report);
  affq_report_free(report);
  return code;
}
