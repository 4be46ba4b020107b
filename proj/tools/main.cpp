// Command-line front end: curve sweeps, decay fits, average-success tables,
// sample-complexity bounds, learner validation and preset experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "oqsim/config.hpp"
#include "oqsim/curve.hpp"
#include "oqsim/io.hpp"
#include "oqsim/pac.hpp"
#include "oqsim/presets.hpp"
#include "oqsim/query.hpp"
#include "oqsim/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;

struct CurveArgs {
  oqsim::ExperimentConfig cfg;
  std::string config_file;
  std::string mode = "hybrid";
  std::string estimator = "rao";
  std::string engine = "rotation";
  std::string sign_mode = "all_plus";
  double eta_rel_sd = -1.0;  // relative takes precedence when set
  double chi_rel_sd = -1.0;
  int cap_log2 = 22;
  double baseline_c = 0.0;
  bool no_fit = false;
};

void add_common_noise_flags(CLI::App* cmd, CurveArgs& a) {
  cmd->add_option("--eta-mean", a.cfg.noise.eta_mean,
                  "mean bit-flip error weight (in [0, 0.5])");
  cmd->add_option("--eta-sd", a.cfg.noise.eta_sd, "absolute sd of eta draws");
  cmd->add_option("--eta-rel-sd", a.eta_rel_sd,
                  "sd of eta draws as a fraction of the mean");
  cmd->add_option("--chi-mean", a.cfg.noise.chi_mean,
                  "mean phase-flip probability per gate transition");
  cmd->add_option("--chi-sd", a.cfg.noise.chi_sd, "absolute sd of chi draws");
  cmd->add_option("--chi-rel-sd", a.chi_rel_sd,
                  "sd of chi draws as a fraction of the mean");
  cmd->add_option("--sign-mode", a.sign_mode,
                  "error sign convention: all_plus|all_minus|per_gate_random");
}

oqsim::QueryMode parse_mode(const std::string& s) {
  if (s == "classical") return oqsim::QueryMode::Classical;
  if (s == "hybrid") return oqsim::QueryMode::Hybrid;
  throw oqsim::ConfigError("mode must be classical or hybrid");
}

std::size_t parse_cap(int cap_log2) {
  if (cap_log2 < 0 || cap_log2 > 25) {
    throw oqsim::ConfigError("cap-log2 must be in [0, 25]");
  }
  return std::size_t{1} << cap_log2;
}

void finalize_noise(CurveArgs& a) {
  if (a.eta_rel_sd >= 0.0) a.cfg.noise.eta_sd = a.eta_rel_sd * a.cfg.noise.eta_mean;
  if (a.chi_rel_sd >= 0.0) a.cfg.noise.chi_sd = a.chi_rel_sd * a.cfg.noise.chi_mean;
  a.cfg.noise.sign_mode = oqsim::sign_mode_from_string(a.sign_mode);
  a.cfg.mode = parse_mode(a.mode);
  a.cfg.opts.estimator = oqsim::estimator_from_string(a.estimator);
  a.cfg.opts.engine = oqsim::engine_from_string(a.engine);
  a.cfg.opts.kappa_cap = parse_cap(a.cap_log2);
}

// With a config file the file is the base and only flags the user actually
// passed override it; without one the flag values and their defaults stand.
oqsim::ExperimentConfig resolve_curve_config(const CLI::App* cmd, CurveArgs& a) {
  if (a.config_file.empty()) {
    finalize_noise(a);
    return a.cfg;
  }
  std::ifstream in(a.config_file);
  if (!in) throw oqsim::ConfigError("cannot open config file: " + a.config_file);
  nlohmann::json j;
  in >> j;
  oqsim::ExperimentConfig cfg = oqsim::config_from_json(j);

  const auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--mode")) cfg.mode = parse_mode(a.mode);
  if (given("--omega-min")) cfg.omega_min = a.cfg.omega_min;
  if (given("--omega-max")) cfg.omega_max = a.cfg.omega_max;
  if (given("--eta-mean")) cfg.noise.eta_mean = a.cfg.noise.eta_mean;
  if (given("--eta-sd")) cfg.noise.eta_sd = a.cfg.noise.eta_sd;
  if (given("--eta-rel-sd")) cfg.noise.eta_sd = a.eta_rel_sd * cfg.noise.eta_mean;
  if (given("--chi-mean")) cfg.noise.chi_mean = a.cfg.noise.chi_mean;
  if (given("--chi-sd")) cfg.noise.chi_sd = a.cfg.noise.chi_sd;
  if (given("--chi-rel-sd")) cfg.noise.chi_sd = a.chi_rel_sd * cfg.noise.chi_mean;
  if (given("--sign-mode")) {
    cfg.noise.sign_mode = oqsim::sign_mode_from_string(a.sign_mode);
  }
  if (given("--devices")) cfg.opts.devices = a.cfg.opts.devices;
  if (given("--phase-samples")) cfg.opts.phase_samples = a.cfg.opts.phase_samples;
  if (given("--queries")) cfg.opts.queries = a.cfg.opts.queries;
  if (given("--estimator")) {
    cfg.opts.estimator = oqsim::estimator_from_string(a.estimator);
  }
  if (given("--engine")) cfg.opts.engine = oqsim::engine_from_string(a.engine);
  if (given("--cap-log2")) cfg.opts.kappa_cap = parse_cap(a.cap_log2);
  if (given("--seed")) cfg.noise.seed = a.cfg.noise.seed;
  if (given("--threads")) cfg.opts.threads = a.cfg.opts.threads;
  if (given("--out")) cfg.out = a.cfg.out;
  return cfg;
}

int run_curve_cmd(const CLI::App* cmd, CurveArgs& a) {
  const oqsim::ExperimentConfig cfg = resolve_curve_config(cmd, a);
  if (cfg.out.empty()) throw oqsim::ConfigError("--out is required");
  std::cout << "curve: mode=" << oqsim::to_string(cfg.mode) << " omega=["
            << cfg.omega_min << "," << cfg.omega_max << "] devices="
            << cfg.opts.devices << " seed=" << cfg.noise.seed << "\n";
  std::optional<double> baseline;
  if (a.baseline_c > 0.0) baseline = a.baseline_c;
  const auto res = oqsim::run_curve(cfg, !a.no_fit, baseline);
  std::cout << "wrote " << res.csv_path.string() << "\n";
  if (!a.no_fit) {
    std::cout << "wrote " << res.fit_path.string() << "\n";
    if (res.fit) {
      std::cout << "c_fit=" << oqsim::format_double(res.fit->c_fit);
      if (!std::isnan(res.fit->gamma)) {
        std::cout << " gamma=" << oqsim::format_double(res.fit->gamma);
      }
      std::cout << " points_used=" << res.fit->points_used << "\n";
    } else {
      std::cout << "fit skipped: " << res.fit_error << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "noisy hybrid-oracle query simulator and analysis toolkit\n"
      "conventions: input words store bit x_j at position j-1 (the least\n"
      "significant bit is x_1); gate index k's binary expansion names the\n"
      "variable subset of its monomial, so a word of Hamming weight w\n"
      "activates 2^w gates"};
  app.set_version_flag("--version", oqsim::kVersion);
  app.require_subcommand(1);

  // --- curve ---------------------------------------------------------------
  CurveArgs ca;
  auto* curve = app.add_subcommand(
      "curve", "sweep success probability over Hamming weight and fit the decay");
  curve->add_option("--config", ca.config_file, "JSON config file (flags override)");
  curve->add_option("--mode", ca.mode, "classical|hybrid");
  curve->add_option("--omega-min", ca.cfg.omega_min, "lowest Hamming weight");
  curve->add_option("--omega-max", ca.cfg.omega_max, "highest Hamming weight");
  add_common_noise_flags(curve, ca);
  curve->add_option("--devices", ca.cfg.opts.devices, "device trials per point");
  curve->add_option("--phase-samples", ca.cfg.opts.phase_samples,
                    "phase-flip patterns per device");
  curve->add_option("--queries", ca.cfg.opts.queries,
                    "measurement shots per device (bernoulli estimator)");
  curve->add_option("--estimator", ca.estimator, "rao|bernoulli");
  curve->add_option("--engine", ca.engine, "rotation|statevector");
  curve->add_option("--cap-log2", ca.cap_log2, "log2 of the gate-step cap (<= 25)");
  curve->add_option("--baseline-c", ca.baseline_c,
                    "classical constant used to report gamma");
  curve->add_flag("--no-fit", ca.no_fit, "write the curve CSV only");
  curve->add_option("--seed", ca.cfg.noise.seed, "master seed");
  curve->add_option("--threads", ca.cfg.opts.threads, "worker threads");
  curve->add_option("--out", ca.cfg.out, "output CSV path");

  // --- fit -----------------------------------------------------------------
  std::string fit_in, fit_out;
  double fit_baseline = 0.0;
  auto* fit = app.add_subcommand("fit", "fit the decay constant of a curve CSV");
  fit->add_option("--in", fit_in, "curve CSV path")->required();
  fit->add_option("--baseline-c", fit_baseline, "baseline constant for gamma");
  fit->add_option("--out", fit_out, "output JSON path");

  // --- pbar ----------------------------------------------------------------
  oqsim::PbarOptions po;
  CurveArgs pa;  // noise flags for measured mode
  std::string pbar_out;
  auto* pbar = app.add_subcommand(
      "pbar", "average success probability and sample-complexity factors over n");
  pbar->add_option("--c", po.c, "classical characteristic constant")->required();
  pbar->add_option("--gamma", po.gamma, "advantage ratio (default 1)");
  pbar->add_option("--n-min", po.n_min, "lowest input length");
  pbar->add_option("--n-max", po.n_max, "highest input length");
  pbar->add_option("--budget-threshold", po.budget_threshold,
                   "A value flagged impractical beyond this");
  pbar->add_flag("--measured", po.measured,
                 "measure P(omega) up to the cap; model beyond");
  add_common_noise_flags(pbar, pa);
  pbar->add_option("--devices", pa.cfg.opts.devices, "device trials per point");
  pbar->add_option("--phase-samples", pa.cfg.opts.phase_samples,
                   "phase-flip patterns per device");
  pbar->add_option("--cap-log2", pa.cap_log2, "log2 of the gate-step cap");
  pbar->add_option("--seed", pa.cfg.noise.seed, "master seed");
  pbar->add_option("--threads", pa.cfg.opts.threads, "worker threads");
  pbar->add_option("--out", pbar_out, "output CSV path")->required();

  // --- pac-bound -------------------------------------------------------------
  oqsim::PacParams pp;
  std::string bound_out;
  bool noiseless = false;
  double p_bar_opt = -1.0;
  auto* bound = app.add_subcommand("pac-bound", "sample-complexity bound");
  bound->add_option("--epsilon", pp.epsilon, "accuracy")->required();
  bound->add_option("--delta", pp.delta, "confidence complement")->required();
  bound->add_option("--log2-hypotheses", pp.hypothesis_log2,
                    "log2 of the hypothesis-class size")->required();
  bound->add_option("--xi", pp.xi, "oracle imperfection 1 - p_bar");
  bound->add_option("--p-bar", p_bar_opt, "average success (sets xi = 1 - p_bar)");
  bound->add_flag("--noiseless", noiseless, "use the noiseless bound");
  bound->add_option("--out", bound_out, "output JSON path");

  // --- learn -----------------------------------------------------------------
  int learn_n = 3, learn_runs = 500;
  double learn_eps = 0.1, learn_delta = 0.1, learn_xi = 0.0;
  std::uint64_t learn_seed = 1;
  int learn_threads = 1;
  std::int64_t learn_m = -1;
  std::string learn_out;
  auto* learn = app.add_subcommand(
      "learn", "validate a PAC bound with the enumerative learner");
  learn->add_option("--n", learn_n, "input bit width (<= 4)");
  learn->add_option("--epsilon", learn_eps, "accuracy");
  learn->add_option("--delta", learn_delta, "confidence complement");
  learn->add_option("--xi", learn_xi, "symmetric label-noise rate");
  learn->add_option("--runs", learn_runs, "independent validation runs");
  learn->add_option("--samples", learn_m, "override the sample count per run");
  learn->add_option("--seed", learn_seed, "master seed");
  learn->add_option("--threads", learn_threads, "worker threads");
  learn->add_option("--out", learn_out, "output CSV path")->required();

  // --- preset ----------------------------------------------------------------
  std::string preset_name, preset_out = ".";
  oqsim::PresetOverrides ov;
  std::uint64_t ov_seed = 0;
  int ov_threads = 0, ov_devices = 0, ov_samples = 0;
  std::string scale = "desk";
  auto* preset = app.add_subcommand("preset", "run a named preset experiment");
  preset->add_option("name", preset_name, "preset name (see --list)");
  bool list_presets = false;
  preset->add_flag("--list", list_presets, "list preset names and exit");
  preset->add_option("--out", preset_out, "output directory");
  preset->add_option("--seed", ov_seed, "master seed");
  preset->add_option("--threads", ov_threads, "worker threads");
  preset->add_option("--devices", ov_devices, "override device trials");
  preset->add_option("--phase-samples", ov_samples, "override phase samples");
  preset->add_option("--scale", scale, "desk|full trial counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help/version land here with exit code 0; real parse problems are
    // configuration errors
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (curve->parsed()) {
      return run_curve_cmd(curve, ca);
    }

    if (fit->parsed()) {
      const auto file = oqsim::read_curve_csv(fit_in);
      std::optional<double> baseline;
      if (fit_baseline > 0.0) baseline = fit_baseline;
      const auto f = oqsim::fit_characteristic(file.points, baseline);
      auto j = oqsim::fit_to_json(f);
      if (!fit_out.empty()) oqsim::write_json(fit_out, j);
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (pbar->parsed()) {
      finalize_noise(pa);
      po.noise = pa.cfg.noise;
      po.opts = pa.cfg.opts;
      const auto rows = oqsim::compute_pbar_rows(po);
      oqsim::write_pbar_csv(pbar_out, rows,
                            {{"config_hash",
                              oqsim::hash_hex(oqsim::fnv1a64(
                                  "pbar" + oqsim::format_double(po.c) +
                                  oqsim::format_double(po.gamma)))},
                             {"seed", std::to_string(pa.cfg.noise.seed)},
                             {"version", oqsim::kVersion}});
      std::cout << "wrote " << pbar_out << "\n";
      return 0;
    }

    if (bound->parsed()) {
      if (p_bar_opt >= 0.0) pp.xi = 1.0 - p_bar_opt;
      const oqsim::PacBound b = oqsim::pac_bound(pp, noiseless);
      nlohmann::json j;
      j["M"] = b.m;
      j["A"] = b.a;
      j["p_bar"] = 1.0 - pp.xi;
      j["xi"] = pp.xi;
      j["epsilon"] = pp.epsilon;
      j["delta"] = pp.delta;
      j["log2_hypotheses"] = pp.hypothesis_log2;
      if (!bound_out.empty()) oqsim::write_json(bound_out, j);
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (learn->parsed()) {
      std::optional<std::uint64_t> m_override;
      if (learn_m >= 0) m_override = static_cast<std::uint64_t>(learn_m);
      const auto v = oqsim::validate_pac_bound(
          learn_n, learn_eps, learn_delta, learn_xi, learn_runs, learn_seed,
          m_override, learn_threads);
      oqsim::write_learn_csv(
          learn_out, v,
          {{"seed", std::to_string(learn_seed)}, {"version", oqsim::kVersion}});
      std::cout << "samples_per_run=" << v.samples_per_run
                << " success_fraction=" << oqsim::format_double(v.success_fraction)
                << " wilson=[" << oqsim::format_double(v.ci.low) << ", "
                << oqsim::format_double(v.ci.high) << "]\n";
      return 0;
    }

    if (preset->parsed()) {
      if (list_presets) {
        for (const auto& name : oqsim::preset_names()) std::cout << name << "\n";
        return 0;
      }
      if (preset_name.empty()) {
        throw oqsim::ConfigError("preset name required (or use --list)");
      }
      if (scale != "desk" && scale != "full") {
        throw oqsim::ConfigError("--scale must be desk or full");
      }
      if (ov_seed) ov.seed = ov_seed;
      if (ov_threads) ov.threads = ov_threads;
      if (ov_devices) ov.devices = ov_devices;
      if (ov_samples) ov.phase_samples = ov_samples;
      ov.full_scale = scale == "full";
      const auto outcome = oqsim::run_preset(preset_name, preset_out, ov);
      for (const auto& p : outcome.outputs) {
        std::cout << "wrote " << p.string() << "\n";
      }
      for (const auto& [label, f] : outcome.fits) {
        std::cout << label << ": c_fit=" << oqsim::format_double(f.c_fit);
        if (!std::isnan(f.gamma)) {
          std::cout << " gamma=" << oqsim::format_double(f.gamma);
        }
        std::cout << "\n";
      }
      return 0;
    }
  } catch (const oqsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const oqsim::CapExceeded& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const oqsim::BudgetExceeded& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const oqsim::DegenerateOracle& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const oqsim::NonConvergent& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const oqsim::InsufficientPoints& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const oqsim::NormDrift& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
