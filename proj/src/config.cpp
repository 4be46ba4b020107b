#include "oqsim/config.hpp"

#include <cmath>

#include "oqsim/errors.hpp"
#include "oqsim/io.hpp"

namespace oqsim {

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["preset"] = c.preset;
  j["mode"] = to_string(c.mode);
  j["omega_min"] = c.omega_min;
  j["omega_max"] = c.omega_max;
  j["noise"] = noise_to_json(c.noise);
  j["devices"] = c.opts.devices;
  j["phase_samples"] = c.opts.phase_samples;
  j["queries"] = c.opts.queries;
  j["estimator"] = to_string(c.opts.estimator);
  j["engine"] = to_string(c.opts.engine);
  j["cap_log2"] = static_cast<int>(std::log2(static_cast<double>(c.opts.kappa_cap)));
  j["threads"] = c.opts.threads;
  j["out"] = c.out;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.preset = j.value("preset", std::string{});
  const std::string mode = j.value("mode", "hybrid");
  if (mode == "classical") {
    c.mode = QueryMode::Classical;
  } else if (mode == "hybrid") {
    c.mode = QueryMode::Hybrid;
  } else {
    throw ConfigError("mode must be \"classical\" or \"hybrid\"");
  }
  c.omega_min = j.value("omega_min", 0);
  c.omega_max = j.value("omega_max", 12);
  if (j.contains("noise")) c.noise = noise_from_json(j.at("noise"));
  c.opts.devices = j.value("devices", 100);
  c.opts.phase_samples = j.value("phase_samples", 1000);
  c.opts.queries = j.value("queries", 1000);
  c.opts.estimator = estimator_from_string(j.value("estimator", "rao"));
  c.opts.engine = engine_from_string(j.value("engine", "rotation"));
  const int cap_log2 = j.value("cap_log2", 22);
  if (cap_log2 < 0 || cap_log2 > 25) {
    throw ConfigError("cap_log2 must be in [0, 25]");
  }
  c.opts.kappa_cap = std::size_t{1} << cap_log2;
  c.opts.threads = j.value("threads", 1);
  c.out = j.value("out", std::string{});
  return c;
}

std::string config_hash(const ExperimentConfig& c) {
  return hash_hex(fnv1a64(config_to_json(c).dump()));
}

}  // namespace oqsim
