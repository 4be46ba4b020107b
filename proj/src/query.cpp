#include "oqsim/query.hpp"

#include <numbers>
#include <string>

namespace oqsim {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_streams(std::size_t kappa, std::span<const double> etas,
                   std::span<const std::int8_t> signs,
                   std::span<const std::uint8_t> flips, std::size_t cap) {
  if (kappa == 0) throw ConfigError("gate sequence is empty");
  if (kappa > cap) {
    throw CapExceeded("kappa = " + std::to_string(kappa) +
                      " gate steps exceed the simulation cap of " +
                      std::to_string(cap) + "; reduce omega or raise the cap");
  }
  if (etas.size() != kappa) throw ConfigError("eta stream length mismatch");
  if (!signs.empty() && signs.size() != kappa) {
    throw ConfigError("sign stream length mismatch");
  }
  if (!flips.empty() && flips.size() != kappa) {
    throw ConfigError("phase-flip stream length mismatch");
  }
}

void check_norm(const Vector2cd& psi) {
  const double n2 = psi.squaredNorm();
  // NaN fails this comparison too and lands in the throw.
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    throw NormDrift("statevector norm drifted to " + std::to_string(n2));
  }
}

double success_from_angle(double phi, bool target_odd) {
  const double c = std::cos(phi);
  const double p0 = c * c;
  return target_odd ? 1.0 - p0 : p0;
}

}  // namespace

double hybrid_success_exact(std::span<const Gate> gates,
                            std::span<const double> etas,
                            std::span<const std::int8_t> signs,
                            std::span<const std::uint8_t> phase_flips,
                            int alpha, std::size_t cap) {
  const std::size_t kappa = gates.size();
  check_streams(kappa, etas, signs, phase_flips, cap);

  Vector2cd psi = basis_state<double>(alpha);
  int not_parity = 0;
  for (std::size_t k = 0; k < kappa; ++k) {
    apply_gate(psi, gates[k]);
    not_parity ^= (gates[k] == Gate::ISigmaY);
    apply_bit_flip_error(psi, etas[k], signs.empty() ? +1 : signs[k]);
    if (!phase_flips.empty() && phase_flips[k]) apply_phase_flip(psi);
    if ((k & 0xffff) == 0xffff) check_norm(psi);
  }
  check_norm(psi);

  const int target = (alpha ^ not_parity) & 1;
  return std::norm(psi(target));
}

QueryResult hybrid_query(std::span<const Gate> gates,
                         std::span<const double> etas,
                         std::span<const std::int8_t> signs,
                         std::span<const std::uint8_t> phase_flips, int alpha,
                         std::optional<double> measure_uniform,
                         std::size_t cap) {
  QueryResult result;
  result.success_prob =
      hybrid_success_exact(gates, etas, signs, phase_flips, alpha, cap);
  int not_parity = 0;
  for (const Gate g : gates) not_parity ^= (g == Gate::ISigmaY);
  result.target_bit = (alpha ^ not_parity) & 1;
  if (measure_uniform) {
    const bool hit = *measure_uniform < result.success_prob;
    result.outcome_bit = hit ? result.target_bit : (result.target_bit ^ 1);
  }
  return result;
}

double rotation_success_exact(std::span<const Gate> gates,
                              std::span<const double> etas,
                              std::span<const std::int8_t> signs,
                              std::span<const std::uint8_t> phase_flips,
                              int /*alpha*/, std::size_t cap) {
  const std::size_t kappa = gates.size();
  check_streams(kappa, etas, signs, phase_flips, cap);

  double phi = 0.0;
  int not_parity = 0;
  for (std::size_t k = 0; k < kappa; ++k) {
    if (gates[k] == Gate::SigmaZ) {
      phi = -phi;
    } else {
      phi -= kHalfPi;
      not_parity ^= 1;
    }
    const double s = signs.empty() ? 1.0 : static_cast<double>(signs[k]);
    const double theta = std::asin(std::min(1.0, std::sqrt(etas[k])));
    phi += (not_parity ? -s : s) * theta;
    if (!phase_flips.empty() && phase_flips[k]) phi = -phi;
  }
  return success_from_angle(phi, not_parity != 0);
}

void RotationPlan::build(std::span<const Gate> gates,
                         std::span<const double> etas,
                         std::span<const std::int8_t> signs) {
  const std::size_t kappa = gates.size();
  check_streams(kappa, etas, signs, {}, kMaxSimCap);

  boundary_.resize(kappa);
  double phi = 0.0;
  int reflections = 0;
  int not_parity = 0;
  for (std::size_t k = 0; k < kappa; ++k) {
    if (gates[k] == Gate::SigmaZ) {
      phi = -phi;
      reflections ^= 1;
    } else {
      phi -= kHalfPi;
      not_parity ^= 1;
    }
    const double s = signs.empty() ? 1.0 : static_cast<double>(signs[k]);
    const double theta = std::asin(std::min(1.0, std::sqrt(etas[k])));
    phi += (not_parity ? -s : s) * theta;
    // Anchoring each boundary with the reflection parity makes the segment
    // sums below independent of all later reflections (up to a global sign
    // that cos^2 cannot see).
    boundary_[k] = reflections ? -phi : phi;
  }
  target_odd_ = (not_parity != 0);
}

double RotationPlan::from_angle(double phi) const {
  return success_from_angle(phi, target_odd_);
}

double RotationPlan::success() const { return from_angle(boundary_.back()); }

double RotationPlan::success(std::span<const std::uint32_t> flip_slots) const {
  // A flip at slot p negates every contribution after p; with flips at
  // p_1 < ... < p_f the angle becomes the alternating segment sum
  // sum_t (-1)^(f-t) (G[p_{t+1}] - G[p_t]).
  double phi = 0.0;
  double prev = 0.0;
  double sgn = (flip_slots.size() & 1) ? -1.0 : 1.0;
  for (const std::uint32_t slot : flip_slots) {
    const double g = boundary_[slot];
    phi += sgn * (g - prev);
    prev = g;
    sgn = -sgn;
  }
  phi += boundary_.back() - prev;
  return from_angle(phi);
}

// --- closed forms ------------------------------------------------------------

double classical_success_exact(std::span<const double> etas) {
  double prod = 1.0;
  for (const double eta : etas) prod *= (1.0 - 2.0 * eta);
  return 0.5 * (1.0 + prod);
}

double classical_model(int omega, double c) {
  const double kappa = std::exp2(static_cast<double>(omega));
  return 0.5 * (1.0 + std::exp(-kappa / c));
}

double characteristic_constant(double eta_mean) {
  if (eta_mean < 0.0 || eta_mean >= 0.5) {
    throw std::domain_error("characteristic constant requires eta in [0, 1/2)");
  }
  if (eta_mean == 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / std::log1p(-2.0 * eta_mean);
}

double interference_gain(double eta0, double eta1) {
  return 2.0 * std::sqrt((1.0 - eta1) * (1.0 - eta0) * eta1 * eta0);
}

double hybrid_closed_form_w1(double eta0, double eta1) {
  const double p_c = (1.0 - eta1) * (1.0 - eta0) + eta1 * eta0;
  return p_c + interference_gain(eta0, eta1);
}

double hybrid_closed_form_w2(double eta0, double eta1, double eta2,
                             double eta3) {
  const double c0 = std::sqrt(1.0 - eta0), s0 = std::sqrt(eta0);
  const double c1 = std::sqrt(1.0 - eta1), s1 = std::sqrt(eta1);
  const double c2 = std::sqrt(1.0 - eta2), s2 = std::sqrt(eta2);
  const double c3 = std::sqrt(1.0 - eta3), s3 = std::sqrt(eta3);
  const double amp = (c3 * c2 + s3 * s2) * (c1 * c0 + s1 * s0) -
                     (c3 * s2 - s3 * c2) * (c1 * s0 - s1 * c0);
  return amp * amp;
}

}  // namespace oqsim
