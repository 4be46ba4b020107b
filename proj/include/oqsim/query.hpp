#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oqsim/errors.hpp"
#include "oqsim/types.hpp"

namespace oqsim {

inline constexpr double kNormTolerance = 1e-9;

template <typename Scalar = double>
Vector2c<Scalar> basis_state(int bit) {
  Vector2c<Scalar> psi = Vector2c<Scalar>::Zero();
  psi(bit & 1) = std::complex<Scalar>(1, 0);
  return psi;
}

template <typename Scalar>
void apply_gate(Vector2c<Scalar>& psi, Gate g) {
  if (g == Gate::SigmaZ) {
    psi(1) = -psi(1);
  } else {
    // i*sigma_y: (a, b) -> (b, -a)
    const std::complex<Scalar> a0 = psi(0);
    psi(0) = psi(1);
    psi(1) = -a0;
  }
}

template <typename Scalar>
void apply_bit_flip_error(Vector2c<Scalar>& psi, Scalar eta, int sign) {
  const Scalar c = std::sqrt(Scalar(1) - eta);
  const std::complex<Scalar> is(0, sign >= 0 ? std::sqrt(eta) : -std::sqrt(eta));
  const std::complex<Scalar> a0 = psi(0);
  psi(0) = c * a0 + is * psi(1);
  psi(1) = is * a0 + c * psi(1);
}

template <typename Scalar>
void apply_phase_flip(Vector2c<Scalar>& psi) {
  psi(1) = -psi(1);
}

// Success probability |<target|psi_final>|^2 of one noise realization from
// exact 2x2 complex evolution starting at |alpha>. Stream lengths must equal
// kappa = gates.size(); `signs` may be empty (all +) and `phase_flips` may be
// empty (no flips). One potential sigma_z insertion follows each gate step.
// Throws CapExceeded when kappa exceeds `cap` and NormDrift when the state
// norm leaves its tolerance band.
double hybrid_success_exact(std::span<const Gate> gates,
                            std::span<const double> etas,
                            std::span<const std::int8_t> signs = {},
                            std::span<const std::uint8_t> phase_flips = {},
                            int alpha = 0, std::size_t cap = kDefaultSimCap);

// One query against a drawn realization: the exact success probability, the
// noiseless target bit of the stream, and (when a measurement uniform is
// supplied) a sampled outcome that equals the target with that probability.
struct QueryResult {
  double success_prob = 0.0;
  int target_bit = 0;
  std::optional<int> outcome_bit;
};

QueryResult hybrid_query(std::span<const Gate> gates,
                         std::span<const double> etas,
                         std::span<const std::int8_t> signs = {},
                         std::span<const std::uint8_t> phase_flips = {},
                         int alpha = 0,
                         std::optional<double> measure_uniform = std::nullopt,
                         std::size_t cap = kDefaultSimCap);

// Same value as hybrid_success_exact, computed in O(1) state.
//
// Every operator in the sequence preserves the family of states whose
// amplitudes are (real, i*real) or (i*real, real), so the evolution reduces
// to a planar rotation/reflection acting on a real 2-vector:
//   sigma_z          -> reflection (negate accumulated angle)
//   i*sigma_y        -> rotation by -pi/2, toggling the family parity
//   bit-flip error   -> rotation by +-asin(sqrt(eta)), the sense set by the
//                       family parity and the error sign
//   phase flip       -> reflection
// The success probability is cos^2 or sin^2 of the accumulated angle
// depending on the i*sigma_y count parity.
double rotation_success_exact(std::span<const Gate> gates,
                              std::span<const double> etas,
                              std::span<const std::int8_t> signs = {},
                              std::span<const std::uint8_t> phase_flips = {},
                              int alpha = 0, std::size_t cap = kDefaultSimCap);

// Per-device plan for evaluating many phase-flip patterns against one drawn
// realization. build() walks the gates once; success(slots) then costs
// O(#flips) via boundary angle sums.
class RotationPlan {
 public:
  void build(std::span<const Gate> gates, std::span<const double> etas,
             std::span<const std::int8_t> signs = {});

  std::size_t size() const { return boundary_.size(); }

  // No phase flips.
  double success() const;

  // Flip slots in ascending order, values in [0, kappa).
  double success(std::span<const std::uint32_t> flip_slots) const;

  bool target_odd() const { return target_odd_; }

 private:
  double from_angle(double phi) const;

  // boundary_[j]: rotation total through slot j, sign-anchored so that a
  // flip at slot j negates exactly the contributions after j.
  std::vector<double> boundary_;
  bool target_odd_ = false;
};

// --- closed forms -----------------------------------------------------------

// Exact probability that an even number of independent bit flips occurs:
// 1/2 (1 + prod_k (1 - 2 eta_k)).
double classical_success_exact(std::span<const double> etas);

// Decay model 1/2 (1 + exp(-2^omega / c)).
double classical_model(int omega, double c);

// c = -1 / ln(1 - 2 eta_mean); the gate-count scale before a classical query
// output turns random. Domain error outside 0 <= eta_mean < 1/2.
double characteristic_constant(double eta_mean);

// Weight-1 and weight-2 closed forms for the hybrid query with consistent
// signs and no phase flips. Both match the exact engines to floating-point
// accuracy for every gate assignment.
double hybrid_closed_form_w1(double eta0, double eta1);
double hybrid_closed_form_w2(double eta0, double eta1, double eta2,
                             double eta3);

// Interference excess of the weight-1 hybrid query over the classical one.
double interference_gain(double eta0, double eta1);

}  // namespace oqsim
