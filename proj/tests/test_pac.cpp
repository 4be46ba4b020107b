#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oqsim/pac.hpp"
#include "oqsim/query.hpp"

using namespace oqsim;

TEST_SUITE("pac") {

TEST_CASE("average success: worked examples") {
  CHECK(average_success(7, [](int) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> table{1.0, 0.9, 0.8};
  CHECK(average_success(2, [&](int w) { return table[w]; }) ==
        doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("average success stays finite and ordered at n = 10^4") {
  const double p = average_success_model(10000, 500.0);
  CHECK(std::isfinite(p));
  CHECK(p >= 0.5);
  CHECK(p <= 1.0);
}

TEST_CASE("hybrid average dominates the classical one") {
  const double c = 0.5e3;
  const double gamma = std::pow(10, 1.40);
  for (int n = 8; n <= 35; ++n) {
    const double pc = average_success_model(n, c);
    const double pq = average_success_model(n, gamma * c);
    CHECK(pq >= pc);
  }
}

TEST_CASE("a factor: worked examples and degeneracy") {
  CHECK(a_factor(1.0) == doctest::Approx(1.0));
  CHECK(a_factor(0.75) == doctest::Approx(4.0));
  CHECK_THROWS_AS(a_factor(0.5), DegenerateOracle);
  CHECK_THROWS_AS(a_factor(0.3), DegenerateOracle);
}

TEST_CASE("series form: huge gamma*c collapses to one") {
  CHECK(a_factor_series(20, 1e30, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("series form agrees with the binomial route (dual check)") {
  const double c = 500.0;
  for (const double gamma : {1.0, std::pow(10, 1.40), std::pow(10, 3.23)}) {
    for (int n = 1; n <= 35; ++n) {
      const double direct = a_factor(average_success_model(n, gamma * c));
      const double series = a_factor_series(n, gamma, c);
      CHECK(std::abs(series / direct - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("series form: n = 12 sits in the directly summable regime") {
  const double direct = a_factor(average_success_model(12, 500.0));
  const double series =
      a_factor_series(12, 1.0, 500.0, 512, SeriesEval::DirectOnly);
  CHECK(std::abs(series / direct - 1.0) < 1e-6);
}

TEST_CASE("series form refuses hopeless direct summation") {
  CHECK_THROWS_AS(a_factor_series(35, 1.0, 500.0, 512, SeriesEval::DirectOnly),
                  NonConvergent);
}

TEST_CASE("noisy sample bound: worked examples") {
  CHECK(sample_bound_noisy({0.1, 0.1, 8.0, 0.25}) == 6833);
  // xi = 0 reduces to 2/eps^2 ln(2|H|/delta)
  const double expect =
      2.0 / 0.01 * std::log(2.0 * 256.0 / 0.1);
  CHECK(sample_bound_noisy({0.1, 0.1, 8.0, 0.0}) ==
        static_cast<std::uint64_t>(std::ceil(expect)));
  CHECK_THROWS_AS(sample_bound_noisy({0.1, 0.1, 8.0, 0.5}), DegenerateOracle);
}

TEST_CASE("noisy bound: doubling the class adds a fixed increment") {
  const PacParams base{0.1, 0.1, 20.0, 0.25};
  PacParams doubled = base;
  doubled.hypothesis_log2 = 21.0;
  const double increment = 2.0 / (0.01 * 0.25) * std::log(2.0);
  const double diff = static_cast<double>(sample_bound_noisy(doubled)) -
                      static_cast<double>(sample_bound_noisy(base));
  CHECK(std::abs(diff - increment) <= 1.0);  // up to rounding
}

TEST_CASE("noiseless sample bound: worked examples") {
  CHECK(sample_bound_noiseless(0.1, 0.1, 8.0) == 79);
  // degenerate class: delta near one needs at most one sample
  CHECK(sample_bound_noiseless(0.5, 0.99, 0.0) <= 1);
  // halving epsilon doubles the bound up to rounding
  const auto m1 = sample_bound_noiseless(0.1, 0.1, 16.0);
  const auto m2 = sample_bound_noiseless(0.05, 0.1, 16.0);
  CHECK(m2 >= 2 * m1 - 2);
  CHECK(m2 <= 2 * m1 + 2);
}

TEST_CASE("bounds handle hypothesis classes up to 2^(2^35)") {
  const double log2_h = std::exp2(35.0);
  const auto m = sample_bound_noisy({0.1, 0.1, log2_h, 0.1});
  CHECK(m > 0);
  CHECK(m < 9.2e18);
}

TEST_CASE("packed truth and masks") {
  CHECK(subset_mask16(0) == 0b1);
  CHECK(subset_mask16(0b101) == ((1u << 0) | (1u << 1) | (1u << 4) | (1u << 5)));
  // constant-one function: only a_0 set
  for (unsigned x = 0; x < 16; ++x) CHECK(packed_truth(0x1, x) == 1);
}

TEST_CASE("learner recovers the target from full noiseless coverage") {
  for (std::uint32_t target : {0u, 0x5au, 0xffu, 0x93u}) {
    std::vector<LabeledSample> samples;
    for (unsigned x = 0; x < 8; ++x) {
      samples.push_back({static_cast<std::uint8_t>(x),
                         static_cast<std::uint8_t>(packed_truth(target, x))});
    }
    CHECK(pac_learn(samples, 3) == target);
  }
}

TEST_CASE("learner ties break toward the lowest index") {
  CHECK(pac_learn({}, 2) == 0);
  // a single sample consistent with many hypotheses: lowest consistent wins
  std::vector<LabeledSample> one{{0, 0}};
  CHECK(pac_learn(one, 2) == 0);
}

TEST_CASE("error rate: worked examples") {
  const auto h = OracleSpec::from_coeffs(2, {0, 1, 1, 0});
  CHECK(error_rate(h, h) == 0.0);
  // toggling a_0 flips the output everywhere
  const auto flipped = OracleSpec::from_coeffs(2, {1, 1, 1, 0});
  CHECK(error_rate(h, flipped) == 1.0);
  // toggling the top monomial x1 x2 changes exactly one input of four
  const auto corner = OracleSpec::from_coeffs(2, {0, 1, 1, 1});
  CHECK(error_rate(h, corner) == 0.25);
  // the packed path agrees
  CHECK(error_rate(0b0110u, 0b1110u, 2) == 0.25);
}

TEST_CASE("wilson interval basics") {
  const auto all = wilson_interval(500, 500);
  CHECK(all.low > 0.99);
  CHECK(all.high == 1.0);
  const auto half = wilson_interval(250, 500);
  CHECK(half.low < 0.5);
  CHECK(half.high > 0.5);
  CHECK(half.high - half.low < 0.1);
}

TEST_CASE("noiseless validation meets its guarantee (reduced runs)") {
  const auto v = validate_pac_bound(3, 0.1, 0.1, 0.0, 150, 2024, std::nullopt, 2);
  CHECK(v.samples_per_run == 79);
  CHECK(v.success_fraction >= 0.9);
}

TEST_CASE("noisy validation meets its guarantee (reduced runs)") {
  const auto v = validate_pac_bound(2, 0.1, 0.1, 0.25, 150, 99, std::nullopt, 2);
  CHECK(v.samples_per_run == 4615);
  CHECK(v.success_fraction >= 0.9);
}

TEST_CASE("negative control: no data, chance-level success") {
  const auto v = validate_pac_bound(3, 0.1, 0.1, 0.0, 200, 5,
                                    std::uint64_t{0}, 2);
  CHECK(v.samples_per_run == 0);
  CHECK(v.success_fraction < 0.05);
}

TEST_CASE("validation is deterministic given the master seed") {
  const auto a = validate_pac_bound(2, 0.1, 0.1, 0.25, 40, 7, std::nullopt, 1);
  const auto b = validate_pac_bound(2, 0.1, 0.1, 0.25, 40, 7, std::nullopt, 4);
  CHECK(a.success_fraction == b.success_fraction);
  for (std::size_t r = 0; r < a.runs.size(); ++r) {
    CHECK(a.runs[r].err == b.runs[r].err);
  }
}

TEST_CASE("factor ordering holds for every advantage ratio above one") {
  const double c = 500.0;
  for (const double gamma : {2.0, 25.0, 1700.0}) {
    for (int n = 8; n <= 35; ++n) {
      const double ac = a_factor(average_success_model(n, c));
      const double aq = a_factor(average_success_model(n, gamma * c));
      CHECK(aq <= ac * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("pac_bound bundles M with the imperfection factor") {
  const PacBound noisy = pac_bound({0.1, 0.1, 8.0, 0.25});
  CHECK(noisy.m == 6833);
  CHECK(noisy.a == doctest::Approx(4.0));
  const PacBound clean = pac_bound({0.1, 0.1, 8.0, 0.0}, true);
  CHECK(clean.m == 79);
  CHECK(clean.a == 1.0);
}

TEST_CASE("hypothesis class is complete and duplicate-free") {
  const HypothesisClass cls{2};
  CHECK(cls.size() == 16);
  CHECK(cls.log2_size() == 4.0);
  // distinct coefficient vectors give distinct truth tables
  std::vector<unsigned> tables;
  for (std::uint32_t a = 0; a < cls.size(); ++a) {
    unsigned tt = 0;
    for (unsigned x = 0; x < 4; ++x) {
      tt |= static_cast<unsigned>(packed_truth(a, x)) << x;
    }
    tables.push_back(tt);
  }
  std::sort(tables.begin(), tables.end());
  for (std::size_t i = 1; i < tables.size(); ++i) {
    CHECK(tables[i] != tables[i - 1]);
  }
}

}  // TEST_SUITE
