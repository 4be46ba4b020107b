#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "oqsim/config.hpp"
#include "oqsim/curve.hpp"
#include "oqsim/pac.hpp"

namespace oqsim {

// Sweeps omega over [omega_min, omega_max]; each point derives its own
// noise seed from (master seed, omega), so curve points are independent and
// classical/hybrid runs at equal seed share device draws (common random
// numbers).
std::vector<CurvePoint> sweep_curve(const ExperimentConfig& cfg);

struct CurveRunResult {
  std::vector<CurvePoint> points;
  std::optional<CurveFit> fit;       // absent when the fit degenerated
  std::string fit_error;             // reason when absent
  std::filesystem::path csv_path;
  std::filesystem::path fit_path;
};

// Writes the curve CSV and (unless disabled) the fit JSON next to it.
CurveRunResult run_curve(const ExperimentConfig& cfg, bool with_fit = true,
                         std::optional<double> baseline_c = std::nullopt);

struct PbarRow {
  int n = 0;
  double p_bar_classical = 0.0;
  double p_bar_hybrid = 0.0;
  double a_classical = 0.0;  // +inf when degenerate
  double a_hybrid = 0.0;
  std::string source;
  std::string flag;  // "impractical" when a_hybrid exceeds the budget
};

struct PbarOptions {
  double c = 0.0;      // classical characteristic constant
  double gamma = 1.0;  // hybrid advantage ratio
  int n_min = 8;
  int n_max = 35;
  double budget_threshold = 1e6;
  // when set, measure P(omega) up to the cap and use the model beyond
  bool measured = false;
  NoiseConfig noise;
  EstimateOptions opts;
};

std::vector<PbarRow> compute_pbar_rows(const PbarOptions& po);
void write_pbar_csv(const std::filesystem::path& path,
                    const std::vector<PbarRow>& rows,
                    const std::vector<std::pair<std::string, std::string>>& meta);

void write_learn_csv(const std::filesystem::path& path,
                     const LearnValidation& v,
                     const std::vector<std::pair<std::string, std::string>>& meta);

// --- preset experiments ------------------------------------------------------

struct PresetOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> devices;
  std::optional<int> phase_samples;
  bool full_scale = false;  // restore full-scale trial counts
};

struct PresetOutcome {
  std::vector<std::filesystem::path> outputs;
  // fitted constants per labelled sweep, in run order
  std::vector<std::pair<std::string, CurveFit>> fits;
};

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);

// Runs a named preset into out_dir, writing CSVs, fit JSONs and a manifest.
PresetOutcome run_preset(const std::string& name,
                         const std::filesystem::path& out_dir,
                         const PresetOverrides& ov = {});

}  // namespace oqsim
