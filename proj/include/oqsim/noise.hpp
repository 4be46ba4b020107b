#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "oqsim/rng.hpp"
#include "oqsim/types.hpp"

namespace oqsim {

// Sign convention for the bit-flip error unitary
// eps = sqrt(1-eta)*I +- i*sqrt(eta)*sigma_x. Systematic (device-wide)
// signs keep the cancellation between consecutive gates intact; the
// per-gate-random mode is for exploration only.
enum class SignMode : std::uint8_t { AllPlus = 0, AllMinus = 1, PerGateRandom = 2 };

struct NoiseConfig {
  double eta_mean = 0.0;  // mean bit-flip weight, in [0, 1/2]
  double eta_sd = 0.0;    // absolute standard deviation of the eta draws
  double chi_mean = 0.0;  // mean phase-flip probability per gate transition
  double chi_sd = 0.0;
  SignMode sign_mode = SignMode::AllPlus;
  std::uint64_t seed = 0;

  static NoiseConfig relative(double eta_mean, double eta_rel_sd,
                              double chi_mean, double chi_rel_sd,
                              std::uint64_t seed,
                              SignMode sign = SignMode::AllPlus) {
    return NoiseConfig{eta_mean, eta_rel_sd * eta_mean,
                       chi_mean, chi_rel_sd * chi_mean, sign, seed};
  }
};

inline double clamp_prob_half(double v) {
  return v < 0.0 ? 0.0 : (v > 0.5 ? 0.5 : v);
}

// Normal draw clamped to [0, 1/2]; deterministic in (seed, trial, position).
double draw_eta(const NoiseConfig& cfg, std::uint64_t trial, std::uint64_t pos);
std::vector<double> draw_etas(const NoiseConfig& cfg, std::uint64_t trial,
                              std::size_t count);

// Phase-flip probability for one gate transition; the position identifies
// the (sample, slot) pair so every query sees fresh draws.
double draw_chi(const NoiseConfig& cfg, std::uint64_t trial, std::uint64_t pos);

// One Bernoulli(chi_k) event per transition, chi_k itself drawn per position.
bool draw_phase_flip(const NoiseConfig& cfg, std::uint64_t trial,
                     std::uint64_t sample, std::uint64_t slot);
std::vector<std::uint8_t> draw_phase_flips(const NoiseConfig& cfg,
                                           std::uint64_t trial,
                                           std::size_t count);

// +1 or -1 for the error-unitary sign at a gate position.
int draw_sign(const NoiseConfig& cfg, std::uint64_t trial, std::uint64_t pos);

// Uniform gate choice for weight-parameterized runs.
Gate draw_gate(const NoiseConfig& cfg, std::uint64_t trial, std::uint64_t pos);

// eps = sqrt(1-eta)*I + sign*i*sqrt(eta)*sigma_x; unitary for eta in [0, 1].
Matrix2cd error_unitary(double eta, int sign = +1);

// E[clamp(N(mu, sigma), lo, hi)], the marginal event rate behind the
// phase-flip draws.
double clamped_normal_mean(double mu, double sigma, double lo, double hi);

// Marginal per-transition flip probability implied by a config.
inline double phase_flip_rate(const NoiseConfig& cfg) {
  if (cfg.chi_sd == 0.0) return clamp_prob_half(cfg.chi_mean);
  return clamped_normal_mean(cfg.chi_mean, cfg.chi_sd, 0.0, 0.5);
}

const char* to_string(SignMode m);
SignMode sign_mode_from_string(const std::string& s);

nlohmann::json noise_to_json(const NoiseConfig& cfg);
NoiseConfig noise_from_json(const nlohmann::json& j);

}  // namespace oqsim
