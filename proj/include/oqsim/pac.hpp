#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "oqsim/errors.hpp"
#include "oqsim/oracle.hpp"

namespace oqsim {

// Binomially weighted average success over uniformly random n-bit inputs:
// P_bar(n) = 2^-n sum_w C(n, w) p(w). Weights are computed in the log
// domain, so n up to 10^4 stays finite.
double average_success(int n, const std::function<double(int)>& p_of_omega);

// P_bar under the decay model with constant c.
double average_success_model(int n, double c);

// Sample-complexity factor A = (2 P_bar - 1)^-2. Throws DegenerateOracle for
// P_bar <= 1/2.
double a_factor(double p_bar);

// Evaluation strategy for the series form of the A factor.
// Auto switches to an exact argument-halving reduction whenever direct
// alternating summation would overflow or cancel catastrophically;
// DirectOnly refuses (NonConvergent) when the terms have not started
// shrinking within j_max.
enum class SeriesEval : std::uint8_t { Auto = 0, DirectOnly = 1 };

// Series form A = [sum_j (-1)^j / j! (gamma c)^-j ((2^j + 1)/2)^n]^-2.
double a_factor_series(int n, double gamma, double c, int j_max = 512,
                       SeriesEval eval = SeriesEval::Auto);

struct PacParams {
  double epsilon = 0.1;
  double delta = 0.1;
  double hypothesis_log2 = 0.0;  // log2 |H|; |H| itself may reach 2^(2^n)
  double xi = 0.0;               // oracle imperfection 1 - P_bar
};

// Noisy-sample bound: ceil( 2 / (eps^2 (1 - 2 xi)^2) * ln(2 |H| / delta) ).
// Throws DegenerateOracle for xi >= 1/2.
std::uint64_t sample_bound_noisy(const PacParams& p);

// Noiseless bound: ceil( (1 / eps) * ln(|H| / delta) ).
std::uint64_t sample_bound_noiseless(double epsilon, double delta,
                                     double hypothesis_log2);

// Bound plus the imperfection factor A = (1 - 2 xi)^-2 it carries.
struct PacBound {
  std::uint64_t m = 0;
  double a = 1.0;
};
PacBound pac_bound(const PacParams& p, bool noiseless = false);

// Complete hypothesis class over n-bit inputs: all 2^(2^n) coefficient
// vectors, indexed by their packed mask (n <= 4 for enumeration).
struct HypothesisClass {
  int n = 1;
  std::uint64_t size() const { return std::uint64_t{1} << (1u << n); }
  double log2_size() const { return std::exp2(static_cast<double>(n)); }
};

// --- enumerative learner (n <= 4) -------------------------------------------

struct LabeledSample {
  std::uint8_t input = 0;  // x in [0, 2^n)
  std::uint8_t label = 0;  // observed bit
};

// Mask over monomial indices k in [0, 2^n) with k a submask of x.
std::uint32_t subset_mask16(unsigned x);

// Truth bit of the packed coefficient vector at input x.
int packed_truth(std::uint32_t coeffs, unsigned x);

// Hypothesis (packed coefficient vector) with maximum agreement on the
// samples; ties break toward the lowest enumeration index.
std::uint32_t pac_learn(std::span<const LabeledSample> samples, int n);

// Fraction of inputs where the hypotheses disagree.
double error_rate(std::uint32_t h, std::uint32_t h_star, int n);
double error_rate(const OracleSpec& h, const OracleSpec& h_star);

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};
WilsonInterval wilson_interval(double successes, double trials,
                               double z = 1.959963984540054);

struct LearnRun {
  double err = 0.0;
  bool success = false;
};

struct LearnValidation {
  int n = 0;
  std::uint64_t samples_per_run = 0;
  double xi = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::vector<LearnRun> runs;
  double success_fraction = 0.0;
  double mean_error = 0.0;
  WilsonInterval ci;
};

// Monte-Carlo validation of a PAC bound: draws a random target, M uniform
// samples with symmetric label noise xi per run, learns by maximum
// agreement, and scores error_rate <= epsilon. M defaults to the applicable
// bound (noisy when xi > 0) and can be overridden (e.g. 0 for a negative
// control).
LearnValidation validate_pac_bound(
    int n, double epsilon, double delta, double xi, int runs,
    std::uint64_t seed, std::optional<std::uint64_t> m_override = std::nullopt,
    int threads = 1);

}  // namespace oqsim
