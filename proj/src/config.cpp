#include "ufs/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ufs {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const json& value, const std::string& why) {
  throw ConfigError("config key '" + key + "' = " + value.dump() + ": " + why);
}

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("config key '" + key + "' is missing");
  if (!j[key].is_number()) fail(key, j[key], "expected a number");
  return j[key].get<double>();
}

long require_integer(const json& j, const std::string& key) {
  double v = require_number(j, key);
  if (v != std::round(v)) fail(key, j[key], "expected an integer");
  return static_cast<long>(v);
}

std::string require_string(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("config key '" + key + "' is missing");
  if (!j[key].is_string()) fail(key, j[key], "expected a string");
  return j[key].get<std::string>();
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
  if (name == "ufs") return Scheme::ufs;
  if (name == "srs") return Scheme::srs;
  if (name == "sync") return Scheme::sync;
  throw ConfigError("config key 'scheme' = \"" + name + "\": expected ufs, srs or sync");
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "power_ratio_db") return SweepAxis::power_ratio_db;
  if (name == "snr_db") return SweepAxis::snr_db;
  if (name == "phi_max") return SweepAxis::phi_max;
  if (name == "pilot_length") return SweepAxis::pilot_length;
  if (name == "segments") return SweepAxis::segments;
  throw ConfigError("config key 'sweep_axis' = \"" + name +
                    "\": expected power_ratio_db, snr_db, phi_max, pilot_length or segments");
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  static const std::set<std::string> known = {
      "M",      "N",          "K",          "phi_max",     "snr_db",
      "power_ratio_db", "trials", "master_seed", "scheme", "sweep_axis",
      "sweep_values", "attack", "beta", "est_iters"};
  for (const auto& item : j.items())
    if (!known.count(item.key()))
      throw ConfigError("config key '" + item.key() + "' is not recognized");

  ExperimentConfig cfg;
  TrainingScenario& scn = cfg.scenario;
  scn.p_bob = 1.0;
  scn.antennas = static_cast<int>(require_integer(j, "M"));
  scn.pilot_length = static_cast<int>(require_integer(j, "N"));
  scn.segments = static_cast<int>(require_integer(j, "K"));
  scn.phi_max = require_number(j, "phi_max");

  double snr_db = require_number(j, "snr_db");
  scn.noise_var = scn.p_bob / std::pow(10.0, snr_db / 10.0);
  double ratio_db = j.contains("power_ratio_db") ? require_number(j, "power_ratio_db") : 0.0;
  scn.p_eve = scn.p_bob * std::pow(10.0, ratio_db / 10.0);

  if (!j.contains("attack")) throw ConfigError("config key 'attack' is missing");
  if (!j["attack"].is_boolean()) fail("attack", j["attack"], "expected a boolean");
  scn.attack = j["attack"].get<bool>();

  cfg.trials = require_integer(j, "trials");
  if (cfg.trials < 1) fail("trials", j["trials"], "must be >= 1");
  long long seed = require_integer(j, "master_seed");
  cfg.master_seed = static_cast<std::uint64_t>(seed);

  cfg.scheme = parse_scheme(require_string(j, "scheme"));
  cfg.axis = parse_sweep_axis(require_string(j, "sweep_axis"));

  if (!j.contains("sweep_values")) throw ConfigError("config key 'sweep_values' is missing");
  if (!j["sweep_values"].is_array() || j["sweep_values"].empty())
    fail("sweep_values", j["sweep_values"], "expected a nonempty array of numbers");
  for (const auto& v : j["sweep_values"]) {
    if (!v.is_number()) fail("sweep_values", v, "expected a number");
    cfg.sweep_values.push_back(v.get<double>());
  }

  if (j.contains("beta")) {
    cfg.srs.beta = require_number(j, "beta");
    if (!(cfg.srs.beta > 0.0 && cfg.srs.beta < 1.0)) fail("beta", j["beta"], "must lie in (0, 1)");
  }
  if (j.contains("est_iters")) {
    cfg.srs.est_iters = static_cast<int>(require_integer(j, "est_iters"));
    if (cfg.srs.est_iters < 1) fail("est_iters", j["est_iters"], "must be >= 1");
  }

  // Validate the template at every sweep point up front.
  try {
    scn.validate();
    for (double v : cfg.sweep_values) apply_axis(scn, cfg.axis, v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config rejected: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

std::string resolved_config_json(const ExperimentConfig& cfg) {
  json j;
  j["M"] = cfg.scenario.antennas;
  j["N"] = cfg.scenario.pilot_length;
  j["K"] = cfg.scenario.segments;
  j["phi_max"] = cfg.scenario.phi_max;
  j["p_bob"] = cfg.scenario.p_bob;
  j["p_eve"] = cfg.scenario.p_eve;
  j["noise_var"] = cfg.scenario.noise_var;
  j["attack"] = cfg.scenario.attack;
  j["scheme"] = to_string(cfg.scheme);
  j["sweep_axis"] = to_string(cfg.axis);
  j["sweep_values"] = cfg.sweep_values;
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["beta"] = cfg.srs.beta;
  j["est_iters"] = cfg.srs.est_iters;
  return j.dump();
}

}  // namespace ufs
