#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>

namespace oqsim {

template <typename Scalar>
using Vector2c = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

using Vector2cd = Vector2c<double>;
using Matrix2cd = Matrix2c<double>;

// Ancilla qubit state: two complex amplitudes, unit norm.
template <typename Scalar>
using QubitState = Vector2c<Scalar>;

// Conditioned single-qubit gates. A zero coefficient acts as sigma_z (the
// bit value is kept), a one coefficient as i*sigma_y (the bit value is
// negated, up to phase).
enum class Gate : std::uint8_t { SigmaZ = 0, ISigmaY = 1 };

enum class QueryMode : std::uint8_t { Classical = 0, Hybrid = 1 };

// Default cap on activated-set enumeration (truth values, index listings).
inline constexpr std::uint64_t kDefaultEnumBudget = std::uint64_t{1} << 24;

// Default / maximum cap on per-realization simulated gate steps.
inline constexpr std::size_t kDefaultSimCap = std::size_t{1} << 22;
inline constexpr std::size_t kMaxSimCap = std::size_t{1} << 25;

inline const char* to_string(QueryMode m) {
  return m == QueryMode::Classical ? "classical" : "hybrid";
}

inline const char* to_string(Gate g) {
  return g == Gate::SigmaZ ? "sigma_z" : "i_sigma_y";
}

}  // namespace oqsim
