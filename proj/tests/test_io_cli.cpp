#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "oqsim/config.hpp"
#include "oqsim/io.hpp"
#include "oqsim/presets.hpp"

using namespace oqsim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("oqsim_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("io_cli") {

TEST_CASE("format_double is shortest-round-trip and stable") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1e-3) == "0.001");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  const double v = 0.1 + 0.2;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("config json round trip and stable hash") {
  ExperimentConfig cfg;
  cfg.preset = "demo";
  cfg.mode = QueryMode::Hybrid;
  cfg.omega_min = 3;
  cfg.omega_max = 17;
  cfg.noise = NoiseConfig::relative(1e-3, 0.05, 1e-2, 0.1, 99,
                                    SignMode::PerGateRandom);
  cfg.opts.devices = 42;
  cfg.opts.phase_samples = 17;
  cfg.opts.queries = 1234;
  cfg.opts.estimator = Estimator::Bernoulli;
  cfg.opts.engine = Engine::Statevector;
  cfg.opts.kappa_cap = std::size_t{1} << 19;
  cfg.opts.threads = 3;
  cfg.out = "somewhere.csv";

  const auto j = config_to_json(cfg);
  const ExperimentConfig back = config_from_json(j);
  CHECK(config_to_json(back) == j);
  CHECK(config_hash(back) == config_hash(cfg));
  CHECK(config_hash(cfg).size() == 16);

  ExperimentConfig other = cfg;
  other.noise.seed = 100;
  CHECK(config_hash(other) != config_hash(cfg));
}

TEST_CASE("curve csv round trip") {
  const auto dir = temp_dir("csv");
  const std::vector<CurvePoint> pts{{3, 0.925, 0.001}, {4, 0.81, 0.002}};
  const auto path = dir / "curve.csv";
  write_curve_csv(path, pts, 10, QueryMode::Hybrid, {{"seed", "5"}});
  const CurveFile file = read_curve_csv(path);
  REQUIRE(file.points.size() == 2);
  CHECK(file.mode == QueryMode::Hybrid);
  CHECK(file.trials == 10);
  CHECK(file.points[0].omega == 3);
  CHECK(file.points[0].p_mean == 0.925);
  CHECK(file.points[1].p_stderr == 0.002);
}

TEST_CASE("csv body excludes metadata comments") {
  const auto dir = temp_dir("body");
  const auto path = dir / "c.csv";
  write_curve_csv(path, {{1, 0.75, 0.0}}, 3, QueryMode::Classical,
                  {{"seed", "7"}, {"version", "x"}});
  const std::string body = read_csv_body(path);
  CHECK(body.find('#') == std::string::npos);
  CHECK(body.find("omega,kappa,p_mean,p_stderr,trials,mode") == 0);
  CHECK(body.find("classical") != std::string::npos);
}

TEST_CASE("manifest serializes config, hash and timings") {
  const auto dir = temp_dir("manifest");
  RunManifest m;
  m.config_hash = "abc";
  m.seed = 9;
  m.version = "test";
  m.wall_ms = 12.5;
  m.stages.push_back({"sweep", 10.0});
  m.outputs.push_back("curve.csv");
  m.config = {{"k", 1}};
  const auto path = dir / "run.manifest.json";
  write_manifest(path, m);
  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  CHECK(j["config_hash"] == "abc");
  CHECK(j["seed"] == 9);
  CHECK(j["stages"][0]["name"] == "sweep");
  CHECK(j["outputs"][0] == "curve.csv");
  CHECK(j["config"]["k"] == 1);
}

TEST_CASE("preset registry") {
  for (const char* name :
       {"fig_s1a", "fig_s1b", "table_s1", "table_s2", "table_1", "fig_s2",
        "fig_2", "learn_noiseless", "learn_noisy"}) {
    CHECK(is_preset(name));
  }
  CHECK_FALSE(is_preset("no_such_preset"));
  CHECK_THROWS_AS(run_preset("no_such_preset", temp_dir("bad"), {}),
                  ConfigError);
}

TEST_CASE("learn csv carries per-run rows plus a summary row") {
  const auto dir = temp_dir("learn");
  LearnValidation v;
  v.runs = {{0.0, true}, {0.25, false}};
  v.success_fraction = 0.5;
  v.mean_error = 0.125;
  const auto path = dir / "runs.csv";
  write_learn_csv(path, v, {});
  const std::string body = read_csv_body(path);
  CHECK(body.find("run,error_rate,success") == 0);
  CHECK(body.find("\nsummary,0.125,0.5\n") != std::string::npos);
}

TEST_CASE("sweep output is byte-identical across thread counts") {
  // scaled-down preset runs with 1 and 8 threads must agree byte for byte
  // on every CSV body
  const auto dir1 = temp_dir("det1");
  const auto dir8 = temp_dir("det8");
  PresetOverrides ov1;
  ov1.seed = 31;
  ov1.threads = 1;
  ov1.devices = 6;
  ov1.phase_samples = 8;
  PresetOverrides ov8 = ov1;
  ov8.threads = 8;
  run_preset("fig_s1a", dir1, ov1);
  run_preset("fig_s1a", dir8, ov8);
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(dir1)) {
    if (entry.path().extension() != ".csv") continue;
    const auto other = dir8 / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(read_csv_body(entry.path()) == read_csv_body(other));
    ++compared;
  }
  CHECK(compared == 6);
}

TEST_CASE("pbar rows: coincidence at gamma 1 and the impractical flag") {
  PbarOptions po;
  po.c = 499.5;
  po.gamma = 1.0;
  po.n_min = 8;
  po.n_max = 40;
  po.budget_threshold = 1e6;
  const auto rows = compute_pbar_rows(po);
  REQUIRE(rows.size() == 33);
  bool flagged = false;
  for (const auto& r : rows) {
    CHECK(r.p_bar_classical == r.p_bar_hybrid);
    CHECK(r.a_classical == r.a_hybrid);
    CHECK(r.source == "model");
    flagged = flagged || r.flag == "impractical";
  }
  CHECK(flagged);  // the factor blows past the budget inside this range

  PbarOptions adv = po;
  adv.gamma = 25.0;
  adv.n_max = 35;
  for (const auto& r : compute_pbar_rows(adv)) {
    CHECK(r.p_bar_hybrid >= r.p_bar_classical);
    CHECK(r.a_hybrid <= r.a_classical * (1 + 1e-12));
  }
}

TEST_CASE("pbar rows: measured points blend into the model tail") {
  PbarOptions po;
  po.c = 499.5;
  po.gamma = 1.0;
  po.n_min = 6;
  po.n_max = 10;
  po.measured = true;
  po.noise = NoiseConfig::relative(1e-3, 0.0, 0.0, 0.0, 77);
  po.opts.devices = 8;
  po.opts.kappa_cap = 1 << 6;  // measure only up to omega = 6
  const auto rows = compute_pbar_rows(po);
  CHECK(rows.front().source == "measured<=6+model");
  // degenerate draws make measured and model values coincide
  for (const auto& r : rows) {
    CHECK(r.p_bar_classical ==
          doctest::Approx(average_success_model(r.n, 499.49983)).epsilon(1e-5));
  }
}

TEST_CASE("hybrid fit dominates the classical fit on one noise config") {
  ExperimentConfig cfg;
  cfg.noise = NoiseConfig::relative(1e-3, 0.10, 0.0, 0.0, 5);
  cfg.opts.devices = 40;
  cfg.opts.threads = 2;
  cfg.mode = QueryMode::Classical;
  cfg.omega_min = 3;
  cfg.omega_max = 11;
  const auto classical = fit_characteristic(sweep_curve(cfg));
  cfg.mode = QueryMode::Hybrid;
  cfg.omega_min = 11;
  cfg.omega_max = 18;
  const auto hybrid = fit_characteristic(sweep_curve(cfg));
  CHECK(classical.c_fit == doctest::Approx(499.5).epsilon(0.05));
  CHECK(hybrid.c_fit > classical.c_fit);
  CHECK(hybrid.c_fit > 1e4);
}

TEST_CASE("regular-error preset: classical decays on model, hybrid stays flat") {
  const auto dir = temp_dir("s1a_props");
  PresetOverrides ov;
  ov.seed = 77;
  ov.threads = 2;
  ov.devices = 6;
  const auto outcome = run_preset("fig_s1a", dir, ov);
  // classical fits recover the analytic constant of each error weight
  int fits_checked = 0;
  for (const auto& [label, fit] : outcome.fits) {
    const double eta = std::stod(label.substr(label.find("eta") + 3));
    CHECK(fit.c_fit ==
          doctest::Approx(-1.0 / std::log1p(-2.0 * eta)).epsilon(1e-6));
    ++fits_checked;
  }
  CHECK(fits_checked == 3);
  // hybrid curves sit at exactly one for every weight above zero
  int hybrid_rows = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.find("hybrid") == std::string::npos ||
        entry.path().extension() != ".csv") {
      continue;
    }
    for (const CurvePoint& pt : read_curve_csv(entry.path()).points) {
      if (pt.omega == 0) {
        CHECK(pt.p_mean < 1.0);  // single gate, no cancellation partner
      } else {
        CHECK(pt.p_mean == 1.0);
      }
      ++hybrid_rows;
    }
  }
  CHECK(hybrid_rows == 39);
}

}  // TEST_SUITE
