#include "oqsim/noise.hpp"

#include <cmath>
#include <numbers>

#include "oqsim/errors.hpp"

namespace oqsim {

namespace {

double clamped_normal(const rng::Stream& st, std::uint64_t pos, double mean,
                      double sd) {
  if (sd == 0.0) return clamp_prob_half(mean);
  return clamp_prob_half(mean + sd * st.normal(pos));
}

}  // namespace

double draw_eta(const NoiseConfig& cfg, std::uint64_t trial, std::uint64_t pos) {
  rng::Stream st(cfg.seed, rng::Tag::Eta, trial);
  return clamped_normal(st, pos, cfg.eta_mean, cfg.eta_sd);
}

std::vector<double> draw_etas(const NoiseConfig& cfg, std::uint64_t trial,
                              std::size_t count) {
  rng::Stream st(cfg.seed, rng::Tag::Eta, trial);
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = clamped_normal(st, k, cfg.eta_mean, cfg.eta_sd);
  }
  return out;
}

double draw_chi(const NoiseConfig& cfg, std::uint64_t trial, std::uint64_t pos) {
  rng::Stream st(cfg.seed, rng::Tag::Chi, trial);
  return clamped_normal(st, pos, cfg.chi_mean, cfg.chi_sd);
}

bool draw_phase_flip(const NoiseConfig& cfg, std::uint64_t trial,
                     std::uint64_t sample, std::uint64_t slot) {
  const std::uint64_t pos = rng::pack(sample, slot);
  const double chi = draw_chi(cfg, trial, pos);
  if (chi == 0.0) return false;
  rng::Stream st(cfg.seed, rng::Tag::PhaseUniform, trial);
  return st.uniform(pos) < chi;
}

std::vector<std::uint8_t> draw_phase_flips(const NoiseConfig& cfg,
                                           std::uint64_t trial,
                                           std::size_t count) {
  std::vector<std::uint8_t> out(count);
  for (std::size_t slot = 0; slot < count; ++slot) {
    out[slot] = draw_phase_flip(cfg, trial, 0, slot) ? 1 : 0;
  }
  return out;
}

int draw_sign(const NoiseConfig& cfg, std::uint64_t trial, std::uint64_t pos) {
  switch (cfg.sign_mode) {
    case SignMode::AllPlus:
      return +1;
    case SignMode::AllMinus:
      return -1;
    case SignMode::PerGateRandom: {
      rng::Stream st(cfg.seed, rng::Tag::Sign, trial);
      return (st.bits(pos) & 1) ? +1 : -1;
    }
  }
  return +1;
}

Gate draw_gate(const NoiseConfig& cfg, std::uint64_t trial, std::uint64_t pos) {
  rng::Stream st(cfg.seed, rng::Tag::GateChoice, trial);
  return (st.bits(pos) & 1) ? Gate::ISigmaY : Gate::SigmaZ;
}

Matrix2cd error_unitary(double eta, int sign) {
  const double c = std::sqrt(1.0 - eta);
  const std::complex<double> is(0.0, sign >= 0 ? std::sqrt(eta) : -std::sqrt(eta));
  Matrix2cd m;
  m << std::complex<double>(c, 0.0), is, is, std::complex<double>(c, 0.0);
  return m;
}

double clamped_normal_mean(double mu, double sigma, double lo, double hi) {
  if (sigma == 0.0) return std::min(hi, std::max(lo, mu));
  const auto cdf = [](double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); };
  const auto pdf = [](double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
  };
  const double a = (lo - mu) / sigma;
  const double b = (hi - mu) / sigma;
  return lo * cdf(a) + hi * (1.0 - cdf(b)) + mu * (cdf(b) - cdf(a)) +
         sigma * (pdf(a) - pdf(b));
}

const char* to_string(SignMode m) {
  switch (m) {
    case SignMode::AllPlus:
      return "all_plus";
    case SignMode::AllMinus:
      return "all_minus";
    case SignMode::PerGateRandom:
      return "per_gate_random";
  }
  return "all_plus";
}

SignMode sign_mode_from_string(const std::string& s) {
  if (s == "all_plus") return SignMode::AllPlus;
  if (s == "all_minus") return SignMode::AllMinus;
  if (s == "per_gate_random") return SignMode::PerGateRandom;
  throw ConfigError("unknown sign mode: " + s);
}

nlohmann::json noise_to_json(const NoiseConfig& cfg) {
  nlohmann::json j;
  j["eta_mean"] = cfg.eta_mean;
  j["eta_rel_sd"] = cfg.eta_mean > 0.0 ? cfg.eta_sd / cfg.eta_mean : 0.0;
  j["chi_mean"] = cfg.chi_mean;
  j["chi_rel_sd"] = cfg.chi_mean > 0.0 ? cfg.chi_sd / cfg.chi_mean : 0.0;
  j["sign_mode"] = to_string(cfg.sign_mode);
  j["seed"] = cfg.seed;
  return j;
}

NoiseConfig noise_from_json(const nlohmann::json& j) {
  NoiseConfig cfg;
  cfg.eta_mean = j.at("eta_mean").get<double>();
  cfg.eta_sd = cfg.eta_mean * j.value("eta_rel_sd", 0.0);
  cfg.chi_mean = j.value("chi_mean", 0.0);
  cfg.chi_sd = cfg.chi_mean * j.value("chi_rel_sd", 0.0);
  cfg.sign_mode = sign_mode_from_string(j.value("sign_mode", "all_plus"));
  cfg.seed = j.value("seed", std::uint64_t{0});
  return cfg;
}

}  // namespace oqsim
