#include "oqsim/pac.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "oqsim/estimate.hpp"
#include "oqsim/query.hpp"
#include "oqsim/rng.hpp"

namespace oqsim {

double average_success(int n, const std::function<double(int)>& p_of_omega) {
  if (n < 0) throw ConfigError("n must be non-negative");
  const double ln2 = std::numbers::ln2;
  const double log_norm = n * ln2;
  double acc = 0.0;
  for (int w = 0; w <= n; ++w) {
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(w + 1.0) -
                             std::lgamma(n - w + 1.0);
    acc += std::exp(log_binom - log_norm) * p_of_omega(w);
  }
  return acc;
}

double average_success_model(int n, double c) {
  return average_success(n, [c](int w) { return classical_model(w, c); });
}

double a_factor(double p_bar) {
  if (p_bar <= 0.5) {
    throw DegenerateOracle("average success probability at or below 1/2");
  }
  const double y = 2.0 * p_bar - 1.0;
  return 1.0 / (y * y);
}

namespace {

// Exact value of the alternating series via the halving identity
//   B_n(beta) = (B_{n-1}(beta) + B_{n-1}(2 beta)) / 2,  B_0(beta) = e^-beta,
// an argument reduction that keeps every partial value positive. Used when
// direct term-by-term summation would overflow or cancel catastrophically.
double series_bracket_reduced(int n, double beta) {
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    v[k] = std::exp(-beta * std::exp2(static_cast<double>(k)));
  }
  for (int level = 1; level <= n; ++level) {
    for (int k = 0; k <= n - level; ++k) v[k] = 0.5 * (v[k] + v[k + 1]);
  }
  return v[0];
}

struct SeriesScan {
  int shrink_from = -1;   // first index with |t_{j+1}| < |t_j|
  double peak_log = 0.0;  // max log |t_j| over the scan
};

SeriesScan scan_terms(int n, double beta, int j_max) {
  SeriesScan s;
  double log_t = 0.0;  // j = 0 term is 1
  for (int j = 0; j < j_max; ++j) {
    // ratio |t_{j+1}| / |t_j|
    const double grow =
        n * (std::log1p(std::exp2(j + 1.0)) - std::log1p(std::exp2(static_cast<double>(j))));
    const double log_ratio = std::log(beta) - std::log1p(static_cast<double>(j)) + grow;
    if (log_ratio < 0.0 && s.shrink_from < 0) s.shrink_from = j;
    log_t += log_ratio;
    s.peak_log = std::max(s.peak_log, log_t);
    if (s.shrink_from >= 0 && log_t < -60.0) break;  // tail is negligible
  }
  return s;
}

double series_bracket_direct(int n, double beta, int j_max) {
  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;  // Kahan carry
  for (int j = 1; j <= j_max; ++j) {
    const double base_prev =
        0.5 * (std::exp2(static_cast<double>(j - 1)) + 1.0);
    const double base = 0.5 * (std::exp2(static_cast<double>(j)) + 1.0);
    term *= -beta / j * std::pow(base / base_prev, n);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < 1e-12 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double a_factor_series(int n, double gamma, double c, int j_max,
                       SeriesEval eval) {
  if (n < 0 || gamma <= 0.0 || c <= 0.0 || j_max < 1) {
    throw ConfigError("series arguments out of range");
  }
  const double beta = 1.0 / (gamma * c);
  const SeriesScan scan = scan_terms(n, beta, j_max);
  // Direct summation is trustworthy only while the peak term cannot eat the
  // significand; past that the reduction evaluates the same series exactly.
  const bool direct_ok = scan.shrink_from >= 0 && scan.peak_log < std::log(1e4);
  double bracket = 0.0;
  if (direct_ok) {
    bracket = series_bracket_direct(n, beta, j_max);
  } else if (eval == SeriesEval::DirectOnly) {
    throw NonConvergent(
        "series terms have not entered the decreasing regime within j_max = " +
        std::to_string(j_max) + " (need roughly 2^n/(gamma c) terms)");
  } else {
    bracket = series_bracket_reduced(n, beta);
  }
  if (!(bracket > 0.0)) {
    throw DegenerateOracle("series bracket underflowed to zero");
  }
  return 1.0 / (bracket * bracket);
}

std::uint64_t sample_bound_noisy(const PacParams& p) {
  if (p.epsilon <= 0.0 || p.epsilon >= 1.0 || p.delta <= 0.0 || p.delta > 1.0) {
    throw ConfigError("epsilon and delta must lie in (0, 1)");
  }
  if (p.xi >= 0.5) {
    throw DegenerateOracle("oracle imperfection xi >= 1/2 gives an infinite bound");
  }
  const double ln_term =
      std::numbers::ln2 * (1.0 + p.hypothesis_log2) - std::log(p.delta);
  const double denom = p.epsilon * p.epsilon * (1.0 - 2.0 * p.xi) * (1.0 - 2.0 * p.xi);
  const double m = 2.0 / denom * ln_term;
  if (m >= 9.2e18) throw ConfigError("sample bound exceeds the 64-bit range");
  return static_cast<std::uint64_t>(std::ceil(std::max(0.0, m)));
}

std::uint64_t sample_bound_noiseless(double epsilon, double delta,
                                     double hypothesis_log2) {
  if (epsilon <= 0.0 || epsilon >= 1.0 || delta <= 0.0 || delta > 1.0) {
    throw ConfigError("epsilon and delta must lie in (0, 1)");
  }
  const double m =
      (std::numbers::ln2 * hypothesis_log2 - std::log(delta)) / epsilon;
  if (m >= 9.2e18) throw ConfigError("sample bound exceeds the 64-bit range");
  return static_cast<std::uint64_t>(std::ceil(std::max(0.0, m)));
}

PacBound pac_bound(const PacParams& p, bool noiseless) {
  PacBound b;
  if (noiseless) {
    b.m = sample_bound_noiseless(p.epsilon, p.delta, p.hypothesis_log2);
    b.a = 1.0;
    return b;
  }
  b.m = sample_bound_noisy(p);
  const double y = 1.0 - 2.0 * p.xi;
  b.a = 1.0 / (y * y);
  return b;
}

// --- enumerative learner ------------------------------------------------------

std::uint32_t subset_mask16(unsigned x) {
  std::uint32_t mask = 0;
  for (unsigned k = 0; k <= x; ++k) {
    if ((k & x) == k) mask |= (std::uint32_t{1} << k);
  }
  return mask;
}

int packed_truth(std::uint32_t coeffs, unsigned x) {
  return std::popcount(coeffs & subset_mask16(x)) & 1;
}

std::uint32_t pac_learn(std::span<const LabeledSample> samples, int n) {
  if (n < 1 || n > 4) throw ConfigError("enumerative learner supports n in [1, 4]");
  const unsigned inputs = 1u << n;
  const std::uint64_t hypotheses = std::uint64_t{1} << inputs;

  std::vector<std::int64_t> ones(inputs, 0), zeros(inputs, 0);
  for (const LabeledSample& s : samples) {
    const unsigned x = s.input & (inputs - 1);
    (s.label ? ones[x] : zeros[x])++;
  }
  std::vector<std::uint32_t> masks(inputs);
  for (unsigned x = 0; x < inputs; ++x) masks[x] = subset_mask16(x);

  std::uint32_t best = 0;
  std::int64_t best_agree = -1;
  for (std::uint64_t a = 0; a < hypotheses; ++a) {
    std::int64_t agree = 0;
    for (unsigned x = 0; x < inputs; ++x) {
      const int bit = std::popcount(static_cast<std::uint32_t>(a) & masks[x]) & 1;
      agree += bit ? ones[x] : zeros[x];
    }
    if (agree > best_agree) {
      best_agree = agree;
      best = static_cast<std::uint32_t>(a);
    }
  }
  return best;
}

double error_rate(std::uint32_t h, std::uint32_t h_star, int n) {
  if (n < 1 || n > 4) throw ConfigError("packed error rate supports n in [1, 4]");
  const unsigned inputs = 1u << n;
  unsigned diff = 0;
  for (unsigned x = 0; x < inputs; ++x) {
    diff += static_cast<unsigned>(packed_truth(h, x) != packed_truth(h_star, x));
  }
  return static_cast<double>(diff) / inputs;
}

double error_rate(const OracleSpec& h, const OracleSpec& h_star) {
  if (h.bit_width() != h_star.bit_width()) {
    throw ConfigError("hypothesis widths differ");
  }
  const auto ta = truth_table(h);
  const auto tb = truth_table(h_star);
  std::size_t diff = 0;
  for (std::size_t x = 0; x < ta.size(); ++x) diff += (ta[x] != tb[x]);
  return static_cast<double>(diff) / static_cast<double>(ta.size());
}

WilsonInterval wilson_interval(double successes, double trials, double z) {
  if (trials <= 0.0) return {0.0, 1.0};
  const double p = successes / trials;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / trials;
  const double center = (p + z2 / (2.0 * trials)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

LearnValidation validate_pac_bound(int n, double epsilon, double delta,
                                   double xi, int runs, std::uint64_t seed,
                                   std::optional<std::uint64_t> m_override,
                                   int threads) {
  if (n < 1 || n > 4) throw ConfigError("learner validation supports n in [1, 4]");
  if (runs < 1) throw ConfigError("need at least one validation run");
  const unsigned inputs = 1u << n;
  const double log2_h = static_cast<double>(inputs);  // |H| = 2^(2^n)

  std::uint64_t m;
  if (m_override) {
    m = *m_override;
  } else if (xi > 0.0) {
    m = sample_bound_noisy({epsilon, delta, log2_h, xi});
  } else {
    m = sample_bound_noiseless(epsilon, delta, log2_h);
  }

  LearnValidation v;
  v.n = n;
  v.samples_per_run = m;
  v.xi = xi;
  v.epsilon = epsilon;
  v.delta = delta;
  v.runs.resize(static_cast<std::size_t>(runs));

  parallel_for(runs, threads, [&](int r) {
    const auto run_id = static_cast<std::uint64_t>(r);
    const rng::Stream target_bits(seed, rng::Tag::LearnerOracle, run_id);
    const rng::Stream input_bits(seed, rng::Tag::LearnerInput, run_id);
    const rng::Stream label_noise(seed, rng::Tag::LearnerLabel, run_id);

    const std::uint32_t h_star =
        static_cast<std::uint32_t>(target_bits.bits(0) & ((1u << inputs) - 1));
    std::vector<LabeledSample> samples(static_cast<std::size_t>(m));
    for (std::uint64_t i = 0; i < m; ++i) {
      const auto x = static_cast<std::uint8_t>(input_bits.bits(i) & (inputs - 1));
      int label = packed_truth(h_star, x);
      if (xi > 0.0 && label_noise.uniform(i) < xi) label ^= 1;
      samples[i] = {x, static_cast<std::uint8_t>(label)};
    }
    const std::uint32_t h = pac_learn(samples, n);
    const double err = error_rate(h, h_star, n);
    v.runs[r] = {err, err <= epsilon};
  });

  double successes = 0.0;
  double err_sum = 0.0;
  for (const LearnRun& run : v.runs) {
    successes += run.success ? 1.0 : 0.0;
    err_sum += run.err;
  }
  v.success_fraction = successes / runs;
  v.mean_error = err_sum / runs;
  v.ci = wilson_interval(successes, static_cast<double>(runs));
  return v;
}

}  // namespace oqsim
