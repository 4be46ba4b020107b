#include "oqsim/curve.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace oqsim {

namespace {

// Floor on the propagated ln-domain sigma; exact synthetic points would
// otherwise carry infinite weight.
constexpr double kSigmaFloor = 1e-9;

}  // namespace

CurveFit fit_characteristic(std::span<const CurvePoint> points,
                            std::optional<double> baseline_c) {
  std::vector<double> kappa;
  std::vector<double> log_y;
  std::vector<double> weight;
  kappa.reserve(points.size());
  for (const CurvePoint& pt : points) {
    const double y = 2.0 * pt.p_mean - 1.0;
    if (y < kFitBandLow || y > kFitBandHigh) continue;
    const double sigma = std::max(2.0 * pt.p_stderr / y, kSigmaFloor);
    kappa.push_back(std::exp2(static_cast<double>(pt.omega)));
    log_y.push_back(std::log(y));
    weight.push_back(1.0 / (sigma * sigma));
  }
  const int used = static_cast<int>(kappa.size());
  if (used < 2) {
    throw InsufficientPoints(
        "need at least two points with 2p-1 inside [" +
        std::to_string(kFitBandLow) + ", " + std::to_string(kFitBandHigh) +
        "]; the sweep never left saturation");
  }

  using Eigen::ArrayXd;
  const ArrayXd k = Eigen::Map<const ArrayXd>(kappa.data(), used);
  const ArrayXd ly = Eigen::Map<const ArrayXd>(log_y.data(), used);
  const ArrayXd w = Eigen::Map<const ArrayXd>(weight.data(), used);

  // ln y = -kappa / c through the origin, weighted least squares.
  const double c = -(w * k * k).sum() / (w * k * ly).sum();

  CurveFit fit;
  fit.c_fit = c;
  fit.points_used = used;
  fit.eta_eff = 1.0 / (2.0 * c);
  fit.residual_rms = std::sqrt((ly + k / c).square().mean());
  if (baseline_c) {
    fit.baseline_c = *baseline_c;
    fit.gamma = advantage_ratio(c, *baseline_c);
  }
  return fit;
}

double usable_length(double c) { return 2.0 * std::log2(c); }

nlohmann::json fit_to_json(const CurveFit& fit) {
  nlohmann::json j;
  j["c_fit"] = fit.c_fit;
  j["gamma"] = std::isnan(fit.gamma) ? nlohmann::json() : nlohmann::json(fit.gamma);
  j["eta_eff"] = fit.eta_eff;
  j["residual_rms"] = fit.residual_rms;
  j["points_used"] = fit.points_used;
  j["baseline_c"] =
      std::isnan(fit.baseline_c) ? nlohmann::json() : nlohmann::json(fit.baseline_c);
  return j;
}

}  // namespace oqsim
