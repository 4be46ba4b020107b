#pragma once

#include <string>

#include <json.hpp>

#include "oqsim/estimate.hpp"
#include "oqsim/noise.hpp"
#include "oqsim/types.hpp"

namespace oqsim {

// One curve run: mode, weight range, noise statistics and estimator scale.
// Serialized form is round-trippable and hashed into every output file.
struct ExperimentConfig {
  std::string preset;  // empty unless produced by a preset
  QueryMode mode = QueryMode::Hybrid;
  int omega_min = 0;
  int omega_max = 12;
  NoiseConfig noise;  // noise.seed doubles as the master seed
  EstimateOptions opts;
  std::string out;
};

nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);
std::string config_hash(const ExperimentConfig& c);

}  // namespace oqsim
