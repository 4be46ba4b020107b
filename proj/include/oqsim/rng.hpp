#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace oqsim::rng {

// Counter-based randomness: every draw is a pure function of
// (seed, stream tag, trial, position). Trials can therefore run on any
// number of threads in any order and still produce identical values.

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine(std::uint64_t h, std::uint64_t v) noexcept {
  return mix64((h + kGamma) ^ mix64(v + kGamma));
}

// One tag per draw purpose. Never mix draw kinds (normal vs uniform) on one
// tag: normal() consumes two counter slots per position.
enum class Tag : std::uint64_t {
  Eta = 1,
  Chi = 2,
  PhaseUniform = 3,
  Sign = 4,
  GateChoice = 5,
  Outcome = 6,
  PhaseSkip = 7,
  OracleCoeff = 8,
  LearnerOracle = 9,
  LearnerInput = 10,
  LearnerLabel = 11,
  PointSeed = 12,
};

class Stream {
 public:
  Stream(std::uint64_t seed, Tag tag, std::uint64_t trial = 0) noexcept
      : base_(combine(combine(seed, static_cast<std::uint64_t>(tag)), trial)) {}

  std::uint64_t bits(std::uint64_t pos) const noexcept {
    return mix64(base_ + pos * kGamma);
  }

  // [0, 1) with 53-bit resolution.
  double uniform(std::uint64_t pos) const noexcept {
    return static_cast<double>(bits(pos) >> 11) * 0x1.0p-53;
  }

  // (0, 1] so that logarithms stay finite.
  double uniform_pos(std::uint64_t pos) const noexcept {
    return static_cast<double>((bits(pos) >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(std::uint64_t pos, double p) const noexcept {
    return uniform(pos) < p;
  }

  // Standard normal, one value per position (Box-Muller, cosine branch).
  double normal(std::uint64_t pos) const noexcept {
    const double u1 = uniform_pos(2 * pos);
    const double u2 = uniform(2 * pos + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t base_;
};

// Packs a (sample, slot) pair into one counter position. Slots address up to
// 2^40 gate transitions, well past the simulation cap.
constexpr std::uint64_t pack(std::uint64_t sample, std::uint64_t slot) noexcept {
  return (sample << 40) | slot;
}

}  // namespace oqsim::rng
