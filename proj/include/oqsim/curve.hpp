#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "oqsim/errors.hpp"

namespace oqsim {

struct CurvePoint {
  int omega = 0;
  double p_mean = 0.0;
  double p_stderr = 0.0;
};

struct CurveFit {
  double c_fit = 0.0;
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double eta_eff = 0.0;  // (2 c_fit)^-1, approximate inversion
  double residual_rms = 0.0;
  int points_used = 0;
  double baseline_c = std::numeric_limits<double>::quiet_NaN();
};

// Usable band for y = 2p - 1; outside it the log transform is
// ill-conditioned (saturation at either end).
inline constexpr double kFitBandLow = 0.02;
inline constexpr double kFitBandHigh = 0.98;

// Weighted least squares of ln y = -2^omega / c through the origin, with
// weights from the propagated point standard errors. Points outside the
// usable band are dropped; fewer than two usable points raise
// InsufficientPoints.
CurveFit fit_characteristic(std::span<const CurvePoint> points,
                            std::optional<double> baseline_c = std::nullopt);

inline double advantage_ratio(double c_eff, double c) { return c_eff / c; }

// Input length up to which a query oracle with constant c stays useful at
// average Hamming weight n/2: 2 log2(c).
double usable_length(double c);

nlohmann::json fit_to_json(const CurveFit& fit);

}  // namespace oqsim
