#include "oqsim/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "oqsim/errors.hpp"
#include "oqsim/query.hpp"

namespace oqsim {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct DeviceScratch {
  RotationPlan plan;
  std::vector<std::uint32_t> slots;
  std::vector<Gate> gates;
  std::vector<double> etas;
  std::vector<std::int8_t> signs;
  std::vector<std::uint8_t> flips;
};

struct DeviceStreams {
  rng::Stream eta;
  rng::Stream sign;
  rng::Stream gate;
  rng::Stream skip;
  rng::Stream outcome;

  DeviceStreams(const NoiseConfig& cfg, std::uint64_t trial)
      : eta(cfg.seed, rng::Tag::Eta, trial),
        sign(cfg.seed, rng::Tag::Sign, trial),
        gate(cfg.seed, rng::Tag::GateChoice, trial),
        skip(cfg.seed, rng::Tag::PhaseSkip, trial),
        outcome(cfg.seed, rng::Tag::Outcome, trial) {}
};

double stream_eta(const DeviceStreams& st, const NoiseConfig& cfg,
                  std::uint64_t pos) {
  if (cfg.eta_sd == 0.0) return clamp_prob_half(cfg.eta_mean);
  return clamp_prob_half(cfg.eta_mean + cfg.eta_sd * st.eta.normal(pos));
}

double stream_sign(const DeviceStreams& st, const NoiseConfig& cfg,
                   std::uint64_t pos) {
  switch (cfg.sign_mode) {
    case SignMode::AllPlus:
      return 1.0;
    case SignMode::AllMinus:
      return -1.0;
    case SignMode::PerGateRandom:
      return (st.sign.bits(pos) & 1) ? 1.0 : -1.0;
  }
  return 1.0;
}

bool stream_gate_is_not(const DeviceStreams& st, std::uint64_t pos) {
  return (st.gate.bits(pos) & 1) != 0;
}

// Exact success probability of one device with no phase flips, streamed in
// O(1) memory (no boundary array).
double walk_device(const DeviceStreams& st, const NoiseConfig& cfg,
                   std::size_t kappa, bool* target_odd_out) {
  double phi = 0.0;
  int not_parity = 0;
  for (std::size_t k = 0; k < kappa; ++k) {
    if (stream_gate_is_not(st, k)) {
      phi -= kHalfPi;
      not_parity ^= 1;
    } else {
      phi = -phi;
    }
    const double eta = stream_eta(st, cfg, k);
    const double theta = std::asin(std::sqrt(eta));
    const double s = stream_sign(st, cfg, k);
    phi += (not_parity ? -s : s) * theta;
  }
  if (target_odd_out) *target_odd_out = (not_parity != 0);
  const double c = std::cos(phi);
  return not_parity ? 1.0 - c * c : c * c;
}

void draw_device_arrays(const DeviceStreams& st, const NoiseConfig& cfg,
                        std::size_t kappa, DeviceScratch& sc) {
  sc.gates.resize(kappa);
  sc.etas.resize(kappa);
  sc.signs.resize(kappa);
  for (std::size_t k = 0; k < kappa; ++k) {
    sc.gates[k] = stream_gate_is_not(st, k) ? Gate::ISigmaY : Gate::SigmaZ;
    sc.etas[k] = stream_eta(st, cfg, k);
    sc.signs[k] = static_cast<std::int8_t>(stream_sign(st, cfg, k));
  }
}

// Flip slots for one sampled phase pattern via geometric gaps at the
// marginal per-slot rate. Per-slot probabilities are drawn independently per
// (sample, slot), so the slot process is i.i.d. Bernoulli(rate) and skip
// sampling reproduces it exactly.
void sample_flip_slots(const DeviceStreams& st, double rate, std::size_t kappa,
                       std::uint64_t sample, std::vector<std::uint32_t>& out) {
  out.clear();
  if (rate <= 0.0) return;
  const double denom = std::log1p(-rate);
  double cursor = 0.0;
  std::uint64_t draw = 0;
  while (true) {
    const double u = st.skip.uniform_pos(rng::pack(sample, draw++));
    const double gap = std::floor(std::log(u) / denom);
    cursor += gap;
    if (cursor >= static_cast<double>(kappa)) break;
    out.push_back(static_cast<std::uint32_t>(cursor));
    cursor += 1.0;
  }
}

double statevector_device_sample(const DeviceScratch& sc, const NoiseConfig& cfg,
                                 std::uint64_t trial, std::uint64_t sample,
                                 std::vector<std::uint8_t>& flips) {
  const std::size_t kappa = sc.gates.size();
  flips.resize(kappa);
  for (std::size_t slot = 0; slot < kappa; ++slot) {
    flips[slot] = draw_phase_flip(cfg, trial, sample, slot) ? 1 : 0;
  }
  return hybrid_success_exact(sc.gates, sc.etas, sc.signs, flips, 0, kMaxSimCap);
}

double hybrid_device(const NoiseConfig& cfg, int device, std::size_t kappa,
                     const EstimateOptions& o, DeviceScratch& sc) {
  const DeviceStreams st(cfg, static_cast<std::uint64_t>(device));
  const double rate = phase_flip_rate(cfg);
  const bool bernoulli = o.estimator == Estimator::Bernoulli;
  const int inner = bernoulli ? o.queries : o.phase_samples;

  if (o.engine == Engine::Statevector) {
    draw_device_arrays(st, cfg, kappa, sc);
    double acc = 0.0;
    for (int q = 0; q < inner; ++q) {
      const double p = statevector_device_sample(sc, cfg, device, q, sc.flips);
      acc += bernoulli ? (st.outcome.uniform(q) < p ? 1.0 : 0.0) : p;
    }
    return acc / inner;
  }

  if (rate == 0.0 && !bernoulli) {
    return walk_device(st, cfg, kappa, nullptr);
  }

  if (rate == 0.0) {
    const double p = walk_device(st, cfg, kappa, nullptr);
    double acc = 0.0;
    for (int q = 0; q < inner; ++q) acc += st.outcome.uniform(q) < p ? 1.0 : 0.0;
    return acc / inner;
  }

  draw_device_arrays(st, cfg, kappa, sc);
  sc.plan.build(sc.gates, sc.etas, sc.signs);
  double acc = 0.0;
  for (int q = 0; q < inner; ++q) {
    sample_flip_slots(st, rate, kappa, static_cast<std::uint64_t>(q), sc.slots);
    const double p = sc.slots.empty() ? sc.plan.success() : sc.plan.success(sc.slots);
    acc += bernoulli ? (st.outcome.uniform(q) < p ? 1.0 : 0.0) : p;
  }
  return acc / inner;
}

double classical_device(const NoiseConfig& cfg, int device, std::size_t kappa,
                        const EstimateOptions& o) {
  const DeviceStreams st(cfg, static_cast<std::uint64_t>(device));
  double prod = 1.0;
  for (std::size_t k = 0; k < kappa; ++k) {
    prod *= 1.0 - 2.0 * stream_eta(st, cfg, k);
  }
  const double p = 0.5 * (1.0 + prod);
  if (o.estimator == Estimator::RaoBlackwell) return p;
  double acc = 0.0;
  for (int q = 0; q < o.queries; ++q) acc += st.outcome.uniform(q) < p ? 1.0 : 0.0;
  return acc / o.queries;
}

}  // namespace

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

TrialEstimate estimate_success(QueryMode mode, int omega,
                               const NoiseConfig& noise,
                               const EstimateOptions& opts) {
  if (omega < 0 || omega >= 40) throw ConfigError("omega must be in [0, 40)");
  if (opts.devices < 1) throw ConfigError("need at least one device trial");
  if (opts.phase_samples < 1 || opts.queries < 1) {
    throw ConfigError("inner sample counts must be positive");
  }
  const std::size_t kappa = std::size_t{1} << omega;
  if (kappa > opts.kappa_cap || opts.kappa_cap > kMaxSimCap) {
    throw CapExceeded("kappa = 2^" + std::to_string(omega) +
                      " exceeds the simulation cap; reduce omega or raise the cap");
  }

  std::vector<double> device_means(static_cast<std::size_t>(opts.devices));
  const int threads = std::max(1, opts.threads);

  if (mode == QueryMode::Classical) {
    parallel_for(opts.devices, threads, [&](int d) {
      device_means[d] = classical_device(noise, d, kappa, opts);
    });
  } else {
    std::vector<DeviceScratch> scratch(static_cast<std::size_t>(
        std::min(threads, opts.devices)));
    const int workers = std::min(threads, opts.devices);
    parallel_for(workers, workers, [&](int w) {
      for (int d = w; d < opts.devices; d += workers) {
        device_means[d] = hybrid_device(noise, d, kappa, opts, scratch[w]);
      }
    });
  }

  // Fixed-order reduction keeps results identical across thread counts.
  double sum = 0.0;
  for (const double v : device_means) sum += v;
  const double mean = sum / opts.devices;
  double var = 0.0;
  for (const double v : device_means) var += (v - mean) * (v - mean);
  const double sd = opts.devices > 1 ? std::sqrt(var / (opts.devices - 1)) : 0.0;

  TrialEstimate est;
  est.mean = mean;
  est.std_err = sd / std::sqrt(static_cast<double>(opts.devices));
  est.trials = opts.devices;
  est.mode = mode;
  return est;
}

const char* to_string(Estimator e) {
  return e == Estimator::RaoBlackwell ? "rao" : "bernoulli";
}

const char* to_string(Engine e) {
  return e == Engine::Rotation ? "rotation" : "statevector";
}

Estimator estimator_from_string(const std::string& s) {
  if (s == "rao") return Estimator::RaoBlackwell;
  if (s == "bernoulli") return Estimator::Bernoulli;
  throw ConfigError("unknown estimator: " + s);
}

Engine engine_from_string(const std::string& s) {
  if (s == "rotation") return Engine::Rotation;
  if (s == "statevector") return Engine::Statevector;
  throw ConfigError("unknown engine: " + s);
}

}  // namespace oqsim
