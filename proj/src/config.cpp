#include "affq/config.hpp"

#include <sstream>

#include "affq/error.hpp"

namespace affq {

namespace {

Rational rational_field(const nlohmann::json& entry, const char* name) {
  if (!entry.contains(name)) throw ConfigError(std::string("measure entry missing '") + name + "'");
  const auto& v = entry.at(name);
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ConfigError(std::string("measure field '") + name + "' must be a \"num/den\" string or an integer");
}

template <class T>
void read(const nlohmann::json& section, const char* key, T& out) {
  if (!section.contains(key)) return;
  try {
    out = section.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

PlaceSet parse_places(const nlohmann::json& v) {
  if (!v.is_array()) throw ConfigError("'places' must be an array");
  PlaceSet out;
  for (const auto& item : v) {
    try {
      out.insert(ExtendedPrime::parse(item.is_string() ? item.get<std::string>() : item.dump()));
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

}  // namespace

StepDistribution parse_measure(const nlohmann::json& block) {
  if (!block.is_array() || block.empty()) throw ConfigError("'measure' must be a non-empty array of atoms");
  std::vector<Atom> atoms;
  for (const auto& entry : block) {
    if (!entry.is_object()) throw ConfigError("measure atoms must be objects with a, b, w");
    const Rational a = rational_field(entry, "a");
    if (a.is_zero()) throw ConfigError("measure atom with a = 0");
    atoms.push_back({AffineMap(a, rational_field(entry, "b")), rational_field(entry, "w")});
  }
  return StepDistribution(std::move(atoms));
}

nlohmann::json measure_to_json(const StepDistribution& mu) {
  auto out = nlohmann::json::array();
  for (const auto& atom : mu.atoms()) {
    out.push_back({{"a", atom.map.a().str()}, {"b", atom.map.b().str()}, {"w", atom.weight.str()}});
  }
  return out;
}

std::string place_set_str(const PlaceSet& places) {
  std::string out;
  for (const auto& p : places) {
    if (!out.empty()) out += ' ';
    out += p.str();
  }
  return out;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  if (measure) j["measure"] = measure_to_json(*measure);
  j["seed"] = seed;
  j["replicas"] = replicas;
  j["n_grid"] = n_grid;
  j["n"] = n;
  if (places) {
    auto arr = nlohmann::json::array();
    for (const auto& p : *places) arr.push_back(p.str());
    j["places"] = arr;
  }
  j["epsilon"] = epsilon;
  j["threshold"] = threshold;
  j["final_bound"] = final_bound;
  j["stab_factor"] = stab_factor;
  j["margin"] = margin;
  j["padic_exponent"] = padic_exponent;
  j["digits"] = digits;
  j["real_tolerance"] = real_tolerance;
  j["probe_agreement"] = probe_agreement;
  j["rate_tolerance"] = rate_tolerance;
  j["abs_tolerance"] = abs_tolerance;
  j["k"] = k;
  j["k_cap"] = k_cap;
  j["n_max"] = n_max;
  j["budget"] = budget;
  // Thread count is deliberately absent: results never depend on it.
  return j;
}

ExperimentConfig parse_config(const nlohmann::json& doc, const std::string& experiment) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  if (experiment == "walk") {
    cfg.n = 20;
    cfg.replicas = 1;
  } else if (experiment == "prop44") {
    cfg.threshold = 0.9;
  }
  if (doc.contains("measure")) cfg.measure = parse_measure(doc.at("measure"));
  read(doc, "seed", cfg.seed);
  read(doc, "replicas", cfg.replicas);
  read(doc, "threads", cfg.threads);

  const nlohmann::json empty = nlohmann::json::object();
  const auto& section = doc.contains(experiment) ? doc.at(experiment) : empty;
  if (!section.is_object()) throw ConfigError("section '" + experiment + "' must be an object");
  read(section, "seed", cfg.seed);
  read(section, "replicas", cfg.replicas);
  read(section, "n_grid", cfg.n_grid);
  read(section, "n", cfg.n);
  if (section.contains("places")) cfg.places = parse_places(section.at("places"));
  read(section, "epsilon", cfg.epsilon);
  read(section, "threshold", cfg.threshold);
  read(section, "final_bound", cfg.final_bound);
  read(section, "stab_factor", cfg.stab_factor);
  read(section, "margin", cfg.margin);
  read(section, "padic_exponent", cfg.padic_exponent);
  read(section, "digits", cfg.digits);
  read(section, "real_tolerance", cfg.real_tolerance);
  read(section, "probe_agreement", cfg.probe_agreement);
  read(section, "rate_tolerance", cfg.rate_tolerance);
  read(section, "abs_tolerance", cfg.abs_tolerance);
  read(section, "k", cfg.k);
  read(section, "k_cap", cfg.k_cap);
  read(section, "n_max", cfg.n_max);
  read(section, "budget", cfg.budget);

  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (cfg.n_grid.empty()) throw ConfigError("n_grid must not be empty");
  for (auto n : cfg.n_grid) {
    if (n == 0) throw ConfigError("n_grid entries must be positive");
  }
  if (cfg.margin == 0) throw ConfigError("margin must be positive");
  if (cfg.digits == 0) throw ConfigError("digits must be positive");
  if (!(cfg.real_tolerance > 0.0)) throw ConfigError("real_tolerance must be positive");
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& experiment) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc, experiment);
}

}  // namespace affq
