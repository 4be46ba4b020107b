#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oqsim/curve.hpp"
#include "oqsim/types.hpp"

namespace oqsim {

// Shortest round-trip decimal form; "inf"/"nan" for non-finite values.
// Used for every number we emit, so output bodies are byte-stable.
std::string format_double(double v);

std::uint64_t fnv1a64(const std::string& s);
std::string hash_hex(std::uint64_t h);

// CSV files carry '#'-prefixed metadata lines (config hash, seed, version)
// followed by a header and data rows. The body (everything except the
// comment lines) is byte-identical across reruns and thread counts.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void meta(const std::string& key, const std::string& value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);

 private:
  std::ofstream out_;
};

// Strips comment lines; what the reproducibility contract covers.
std::string read_csv_body(const std::filesystem::path& path);

void write_curve_csv(const std::filesystem::path& path,
                     const std::vector<CurvePoint>& points, int trials,
                     QueryMode mode,
                     const std::vector<std::pair<std::string, std::string>>& meta);

struct CurveFile {
  std::vector<CurvePoint> points;
  QueryMode mode = QueryMode::Hybrid;
  int trials = 0;
};
CurveFile read_curve_csv(const std::filesystem::path& path);

struct StageTiming {
  std::string name;
  double ms = 0.0;
};

struct RunManifest {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version;
  double wall_ms = 0.0;
  std::vector<StageTiming> stages;
  std::vector<std::string> outputs;
  nlohmann::json config;  // full config for regeneration
};

void write_manifest(const std::filesystem::path& path, const RunManifest& m);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace oqsim
