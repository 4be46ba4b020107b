#include "oqsim/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "oqsim/errors.hpp"
#include "oqsim/version.hpp"

namespace oqsim {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw ConfigError("cannot open output file: " + path.string());
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
  out_ << "# " << key << "=" << value << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << (i ? "," : "") << columns[i];
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out_ << (i ? "," : "") << fields[i];
  }
  out_ << "\n";
}

std::string read_csv_body(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path.string());
  std::string body;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '#') continue;
    body += line;
    body += '\n';
  }
  return body;
}

void write_curve_csv(
    const std::filesystem::path& path, const std::vector<CurvePoint>& points,
    int trials, QueryMode mode,
    const std::vector<std::pair<std::string, std::string>>& meta) {
  CsvWriter csv(path);
  for (const auto& [k, v] : meta) csv.meta(k, v);
  csv.header({"omega", "kappa", "p_mean", "p_stderr", "trials", "mode"});
  for (const CurvePoint& pt : points) {
    csv.row({std::to_string(pt.omega),
             std::to_string(std::uint64_t{1} << pt.omega),
             format_double(pt.p_mean), format_double(pt.p_stderr),
             std::to_string(trials), to_string(mode)});
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

CurveFile read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open curve file: " + path.string());
  CurveFile file;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!saw_header) {
      saw_header = true;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() < 6) throw ConfigError("malformed curve row: " + line);
    CurvePoint pt;
    pt.omega = std::stoi(fields[0]);
    pt.p_mean = std::stod(fields[2]);
    pt.p_stderr = std::stod(fields[3]);
    file.points.push_back(pt);
    file.trials = std::stoi(fields[4]);
    file.mode = fields[5] == "classical" ? QueryMode::Classical : QueryMode::Hybrid;
  }
  if (!saw_header) throw ConfigError("curve file has no header: " + path.string());
  return file;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  nlohmann::json j;
  j["config_hash"] = m.config_hash;
  j["seed"] = m.seed;
  j["version"] = m.version.empty() ? kVersion : m.version;
  j["wall_ms"] = m.wall_ms;
  nlohmann::json stages = nlohmann::json::array();
  for (const StageTiming& st : m.stages) {
    stages.push_back({{"name", st.name}, {"ms", st.ms}});
  }
  j["stages"] = stages;
  j["outputs"] = m.outputs;
  if (!m.config.is_null()) j["config"] = m.config;
  write_json(path, j);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace oqsim
