#include "oqsim/oracle.hpp"

#include <string>
#include <utility>

namespace oqsim {

namespace {

void check_width(int n) {
  if (n < 1 || n > 64) throw ConfigError("bit width must be in [1, 64]");
}

std::uint64_t activated_count(const InputWord& x) {
  return std::uint64_t{1} << hamming_weight(x);
}

}  // namespace

std::vector<std::uint64_t> activated_indices(const InputWord& x,
                                             std::uint64_t budget) {
  check_width(x.n);
  const std::uint64_t kappa = activated_count(x);
  if (kappa > budget) {
    throw BudgetExceeded("activated set of size 2^" +
                         std::to_string(hamming_weight(x)) +
                         " exceeds enumeration budget");
  }
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(kappa));
  for_each_activated(x, [&](std::uint64_t k) { out.push_back(k); });
  return out;
}

OracleSpec OracleSpec::from_coeffs(int n, std::vector<std::uint8_t> coeffs) {
  check_width(n);
  if (n > 24) throw ConfigError("explicit coefficient mode supports n <= 24");
  if (coeffs.size() != (std::size_t{1} << n)) {
    throw ConfigError("explicit mode requires exactly 2^n coefficients");
  }
  for (auto& c : coeffs) c = static_cast<std::uint8_t>(c & 1);
  return OracleSpec(n, Mode::Explicit, std::move(coeffs), 0);
}

OracleSpec OracleSpec::from_seed(int n, std::uint64_t seed) {
  check_width(n);
  return OracleSpec(n, Mode::Seeded, {}, seed);
}

int truth_value(const OracleSpec& oracle, const InputWord& x,
                std::uint64_t budget) {
  if (x.n != oracle.bit_width()) throw ConfigError("input width mismatch");
  const std::uint64_t kappa = activated_count(x);
  if (kappa > budget) {
    throw BudgetExceeded("truth value over 2^" +
                         std::to_string(hamming_weight(x)) +
                         " activated gates exceeds enumeration budget");
  }
  int acc = 0;
  for_each_activated(x, [&](std::uint64_t k) { acc ^= oracle.coeff(k); });
  return acc;
}

std::vector<Gate> activated_gates(const OracleSpec& oracle, const InputWord& x,
                                  std::uint64_t budget) {
  if (x.n != oracle.bit_width()) throw ConfigError("input width mismatch");
  const std::uint64_t kappa = activated_count(x);
  if (kappa > budget) throw BudgetExceeded("gate sequence exceeds budget");
  std::vector<Gate> out;
  out.reserve(static_cast<std::size_t>(kappa));
  for_each_activated(x, [&](std::uint64_t k) { out.push_back(oracle.gate(k)); });
  return out;
}

std::vector<std::uint8_t> truth_table(const OracleSpec& oracle) {
  if (oracle.mode() != OracleSpec::Mode::Explicit) {
    throw ConfigError("truth tables require an explicit oracle");
  }
  std::vector<std::uint8_t> table = oracle.coeffs();
  const std::size_t size = table.size();
  // XOR butterfly: after pass b, table[x] = XOR of coefficients over
  // submasks of x restricted to the processed bits.
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t x = 0; x < size; ++x) {
      if (x & bit) table[x] ^= table[x ^ bit];
    }
  }
  return table;
}

nlohmann::json oracle_to_json(const OracleSpec& oracle) {
  nlohmann::json j;
  j["n"] = oracle.bit_width();
  if (oracle.mode() == OracleSpec::Mode::Explicit) {
    j["mode"] = "explicit";
    j["coeffs"] = oracle.coeffs();
  } else {
    j["mode"] = "seeded";
    j["seed"] = oracle.seed();
  }
  return j;
}

OracleSpec oracle_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "explicit") {
    return OracleSpec::from_coeffs(n, j.at("coeffs").get<std::vector<std::uint8_t>>());
  }
  if (mode == "seeded") {
    return OracleSpec::from_seed(n, j.at("seed").get<std::uint64_t>());
  }
  throw ConfigError("oracle mode must be \"explicit\" or \"seeded\"");
}

}  // namespace oqsim
