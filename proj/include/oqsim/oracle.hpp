#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "oqsim/errors.hpp"
#include "oqsim/rng.hpp"
#include "oqsim/types.hpp"

namespace oqsim {

// Classical input word of n bits. Bit j-1 of `bits` holds x_j, i.e. the
// least significant bit is x_1.
struct InputWord {
  std::uint64_t bits = 0;
  int n = 1;
};

inline std::uint64_t word_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

inline int hamming_weight(const InputWord& x) {
  return std::popcount(x.bits & word_mask(x.n));
}

// Visits the activated gate indices of x in ascending order. These are
// exactly the submasks of x: index k is activated iff (k AND x) == k, so the
// binary expansion of k names the variable subset of its monomial. Index 0
// is always first and the count is 2^hamming_weight(x).
template <typename Visitor>
void for_each_activated(const InputWord& x, Visitor&& visit) {
  const std::uint64_t m = x.bits & word_mask(x.n);
  std::uint64_t sub = 0;
  while (true) {
    visit(sub);
    if (sub == m) break;
    sub = (sub - m) & m;
  }
}

// Materialized activated set; throws BudgetExceeded when 2^omega > budget.
std::vector<std::uint64_t> activated_indices(
    const InputWord& x, std::uint64_t budget = kDefaultEnumBudget);

// The hidden Boolean function in XOR-polynomial form: coefficients a_k over
// monomial masks k. Small widths hold the coefficient vector explicitly;
// large widths derive a_k from a seeded hash so that any index is available
// on demand and reproducibly.
class OracleSpec {
 public:
  enum class Mode : std::uint8_t { Explicit = 0, Seeded = 1 };

  static OracleSpec from_coeffs(int n, std::vector<std::uint8_t> coeffs);
  static OracleSpec from_seed(int n, std::uint64_t seed);

  int bit_width() const { return n_; }
  Mode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<std::uint8_t>& coeffs() const { return coeffs_; }

  std::uint8_t coeff(std::uint64_t k) const {
    if (mode_ == Mode::Explicit) return coeffs_[static_cast<std::size_t>(k)];
    // parity of a seeded 64-bit hash of k
    return static_cast<std::uint8_t>(std::popcount(coeff_stream_.bits(k)) & 1);
  }

  Gate gate(std::uint64_t k) const {
    return coeff(k) ? Gate::ISigmaY : Gate::SigmaZ;
  }

 private:
  OracleSpec(int n, Mode mode, std::vector<std::uint8_t> coeffs,
             std::uint64_t seed)
      : n_(n),
        mode_(mode),
        coeffs_(std::move(coeffs)),
        seed_(seed),
        coeff_stream_(seed, rng::Tag::OracleCoeff) {}

  int n_;
  Mode mode_;
  std::vector<std::uint8_t> coeffs_;
  std::uint64_t seed_ = 0;
  rng::Stream coeff_stream_;
};

// XOR over the activated coefficients; equals the bit reached by the
// noiseless gate sequence applied to |0>.
int truth_value(const OracleSpec& oracle, const InputWord& x,
                std::uint64_t budget = kDefaultEnumBudget);

// Gate sequence over the activated set, in ascending index order.
std::vector<Gate> activated_gates(const OracleSpec& oracle, const InputWord& x,
                                  std::uint64_t budget = kDefaultEnumBudget);

// Full truth table of an explicit oracle via the in-place XOR butterfly;
// index x holds h(x). Requires explicit mode (n <= 24).
std::vector<std::uint8_t> truth_table(const OracleSpec& oracle);

nlohmann::json oracle_to_json(const OracleSpec& oracle);
OracleSpec oracle_from_json(const nlohmann::json& j);

}  // namespace oqsim
