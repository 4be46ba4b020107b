#include <doctest.h>

#include <cmath>

#include "oqsim/noise.hpp"

using namespace oqsim;

TEST_SUITE("noise") {

TEST_CASE("degenerate normal: every eta equals the mean") {
  NoiseConfig cfg{1e-3, 0.0, 0.0, 0.0, SignMode::AllPlus, 4};
  const auto etas = draw_etas(cfg, 3, 1000);
  for (const double e : etas) CHECK(e == 1e-3);
}

TEST_CASE("eta draws: law of large numbers") {
  NoiseConfig cfg{1e-3, 0.05e-3, 0.0, 0.0, SignMode::AllPlus, 21};
  const std::size_t count = 1000000;
  const auto etas = draw_etas(cfg, 0, count);
  double sum = 0.0, sum2 = 0.0;
  for (const double e : etas) {
    sum += e;
    sum2 += e * e;
  }
  const double mean = sum / count;
  const double sd = std::sqrt(sum2 / count - mean * mean);
  CHECK(std::abs(mean - 1e-3) < 3.0 * cfg.eta_sd / std::sqrt(double(count)));
  CHECK(std::abs(sd - cfg.eta_sd) < 0.05 * cfg.eta_sd);
}

TEST_CASE("draws are clamped to [0, 1/2]") {
  NoiseConfig cfg{0.49, 0.1, 0.0, 0.0, SignMode::AllPlus, 8};
  const auto etas = draw_etas(cfg, 1, 100000);
  double mx = 0.0, mn = 1.0;
  for (const double e : etas) {
    mx = std::max(mx, e);
    mn = std::min(mn, e);
  }
  CHECK(mx <= 0.5);
  CHECK(mn >= 0.0);
  CHECK(mx == 0.5);  // clamp visibly active at this config
}

TEST_CASE("determinism across repeated calls and chunk sizes") {
  NoiseConfig cfg{1e-2, 1e-3, 1e-2, 1e-3, SignMode::PerGateRandom, 5};
  const auto a = draw_etas(cfg, 9, 64);
  const auto b = draw_etas(cfg, 9, 128);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
  for (std::size_t s = 0; s < 32; ++s) {
    CHECK(draw_phase_flip(cfg, 9, 2, s) == draw_phase_flip(cfg, 9, 2, s));
    CHECK(draw_sign(cfg, 9, s) == draw_sign(cfg, 9, s));
    CHECK(draw_gate(cfg, 9, s) == draw_gate(cfg, 9, s));
  }
}

TEST_CASE("phase flips: zero mean never fires") {
  NoiseConfig cfg{0.0, 0.0, 0.0, 0.0, SignMode::AllPlus, 3};
  const auto flips = draw_phase_flips(cfg, 0, 4096);
  for (const auto f : flips) CHECK(f == 0);
}

TEST_CASE("phase flips: fair-coin rate") {
  NoiseConfig cfg{0.0, 0.0, 0.5, 0.0, SignMode::AllPlus, 13};
  const std::size_t count = 1000000;
  std::size_t fired = 0;
  for (std::size_t s = 0; s < count; ++s) fired += draw_phase_flip(cfg, 0, 0, s);
  CHECK(std::abs(double(fired) / count - 0.5) < 0.002);
}

TEST_CASE("phase flips: small rate within binomial concentration") {
  NoiseConfig cfg{0.0, 0.0, 1e-2, 0.1e-2, SignMode::AllPlus, 14};
  const std::size_t count = 1000000;
  std::size_t fired = 0;
  for (std::size_t s = 0; s < count; ++s) fired += draw_phase_flip(cfg, 1, 0, s);
  const double sigma = std::sqrt(1e-2 * (1 - 1e-2) / count);
  CHECK(std::abs(double(fired) / count - 1e-2) < 3.0 * sigma);
}

TEST_CASE("marginal flip rate closed form matches sampling") {
  NoiseConfig cfg{0.0, 0.0, 0.3, 0.25, SignMode::AllPlus, 15};  // clamps both sides
  const double rate = phase_flip_rate(cfg);
  const std::size_t count = 2000000;
  std::size_t fired = 0;
  for (std::size_t s = 0; s < count; ++s) fired += draw_phase_flip(cfg, 2, 0, s);
  const double sigma = std::sqrt(rate * (1 - rate) / count);
  CHECK(rate > 0.25);  // both clamps bite; net shift is mildly downward
  CHECK(rate < 0.3);
  CHECK(std::abs(double(fired) / count - rate) < 5.0 * sigma);
}

TEST_CASE("error unitary worked examples") {
  const Matrix2cd id = error_unitary(0.0);
  CHECK((id - Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0);

  const Matrix2cd half = error_unitary(0.5, +1);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(half(0, 0) - std::complex<double>(r, 0)) < 1e-15);
  CHECK(std::abs(half(0, 1) - std::complex<double>(0, r)) < 1e-15);

  // flip amplitude squared equals eta
  const Matrix2cd quarter = error_unitary(0.25, -1);
  CHECK(std::norm(quarter(1, 0)) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("error unitary is unitary to 1e-14 across the domain") {
  for (const double eta : {0.0, 1e-9, 1e-4, 0.1, 0.25, 0.4999, 0.5}) {
    for (const int sign : {+1, -1}) {
      const Matrix2cd m = error_unitary(eta, sign);
      const Matrix2cd residue = m.adjoint() * m - Matrix2cd::Identity();
      CHECK(residue.cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("sign modes") {
  NoiseConfig plus{1e-3, 0, 0, 0, SignMode::AllPlus, 6};
  NoiseConfig minus{1e-3, 0, 0, 0, SignMode::AllMinus, 6};
  NoiseConfig rnd{1e-3, 0, 0, 0, SignMode::PerGateRandom, 6};
  int pluses = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    CHECK(draw_sign(plus, 0, k) == 1);
    CHECK(draw_sign(minus, 0, k) == -1);
    pluses += draw_sign(rnd, 0, k) > 0;
  }
  CHECK(pluses > 400);
  CHECK(pluses < 600);
}

TEST_CASE("config json round trip uses relative sds") {
  const NoiseConfig cfg = NoiseConfig::relative(1e-3, 0.05, 1e-2, 0.1, 42,
                                               SignMode::PerGateRandom);
  const auto j = noise_to_json(cfg);
  CHECK(j.at("eta_rel_sd").get<double>() == doctest::Approx(0.05));
  const NoiseConfig back = noise_from_json(j);
  CHECK(back.eta_mean == cfg.eta_mean);
  CHECK(back.eta_sd == doctest::Approx(cfg.eta_sd));
  CHECK(back.chi_sd == doctest::Approx(cfg.chi_sd));
  CHECK(back.sign_mode == cfg.sign_mode);
  CHECK(back.seed == cfg.seed);
}

}  // TEST_SUITE
