#pragma once

#include <cstdint>
#include <functional>

#include "oqsim/noise.hpp"
#include "oqsim/types.hpp"

namespace oqsim {

// RaoBlackwell averages exact per-realization success probabilities over the
// sampled phase-flip patterns; Bernoulli additionally samples measurement
// outcomes and counts successes, mimicking a finite-shot experiment.
enum class Estimator : std::uint8_t { RaoBlackwell = 0, Bernoulli = 1 };

// Rotation is the fast exact engine; Statevector the literal 2x2 complex
// evolution with per-position phase-flip draws. Both are deterministic given
// (seed, trial); they consume different flip streams, so their estimates
// agree statistically, not bit-for-bit.
enum class Engine : std::uint8_t { Rotation = 0, Statevector = 1 };

struct EstimateOptions {
  int devices = 100;        // independent device draws (outer trials)
  int phase_samples = 1000; // sampled phase-flip patterns per device
  int queries = 1000;       // measurement shots per device (Bernoulli mode)
  Estimator estimator = Estimator::RaoBlackwell;
  Engine engine = Engine::Rotation;
  std::size_t kappa_cap = kDefaultSimCap;
  int threads = 1;
};

struct TrialEstimate {
  double mean = 0.0;
  double std_err = 0.0;  // sample sd over devices / sqrt(devices)
  int trials = 0;
  QueryMode mode = QueryMode::Classical;
};

// Success-probability estimate at Hamming weight omega (kappa = 2^omega gate
// steps per query). Each device trial draws its own {eta_k}, signs and gate
// choices from counter streams keyed by the trial index, so results do not
// depend on thread count or scheduling.
TrialEstimate estimate_success(QueryMode mode, int omega,
                               const NoiseConfig& noise,
                               const EstimateOptions& opts = {});

// Static partition of [0, count) over threads; fn(i) must be independent of
// execution order.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

const char* to_string(Estimator e);
const char* to_string(Engine e);
Estimator estimator_from_string(const std::string& s);
Engine engine_from_string(const std::string& s);

}  // namespace oqsim
