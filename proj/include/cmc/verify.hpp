#pragma once

// Independent checks on sampled generating curves. Each returns a report with
// the worst residual, the tolerance it was judged against and the
// per-sample residuals.

#include <string>
#include <vector>

#include <json.hpp>

#include "cmc/curve.hpp"
#include "cmc/rotation.hpp"

namespace cmc {

struct VerificationReport {
  std::string check_name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool applicable = true;  // false when the check's precondition does not hold
  std::vector<double> details;
  std::string note;
};

inline constexpr double kFluxTolerance = 1e-8;
inline constexpr double kMeanCurvatureTolerance = 1e-5;
inline constexpr double kConvexityTolerance = 1e-9;

// F_i = c(rho_i) u_i - nH m(rho_i) with u = slope / sqrt(1 + slope^2), where
// (c, m) = (sinh^{n-1}, I_{n-1}) for rotation and (cosh^{n-1}, J_{n-1}) for
// translation curves. Residual |F_i - d| / max(1, c(rho_i)): F carries the
// rounding of c u, which is relative to c. Requires a fundamental arc.
VerificationReport flux_residual(const SampledCurve& curve, double tol = kFluxTolerance);

// Mean curvature recovered as H_i = (u' + (n-1) w(rho) u) / n with
// w = coth (rotation) or tanh (translation), u' from a five-point
// finite-difference stencil on the sample nodes (shifted at the ends).
// Residual |H_i - H| / H on interior nodes.
VerificationReport mean_curvature_residual(const SampledCurve& curve,
                                           double tol = kMeanCurvatureTolerance);

// Q_{H,d}(t) strictly increasing in H: for consecutive sorted H values the
// residual at t is Q_{H_lo}(t) - Q_{H_hi}(t), which must be negative. Points of
// t_grid outside some H's existence interval are dropped; OutsideDomain if
// none remain. Repeated H values make the check not applicable.
VerificationReport q_monotone_in_H(int n, double d, const std::vector<double>& t_grid,
                                   const std::vector<double>& H_values);

// Compares the far end of a curve with its asymptote.
//   LinearSlope:   |height/rho - value| at the last sample (rho >= 30).
//   Exponential2D: |height / (value e^{rate rho}) - 1| at the last sample.
//   Integral3D:    |slope / (e^t / (2 sqrt(2) sqrt(t))) - 1| at the node nearest t = 20.
//   ExponentialND: least-squares slope b of log(height) on [20, 25] and
//                  [25, 30]; passes when both are positive and agree within
//                  1e-2. details = {b_early, b_late}.
// Throws InsufficientRange when the curve does not reach the needed rho.
VerificationReport asymptote_check(const SampledCurve& curve, const AsymptoteSpec& spec);

// Whether (rho, height) lies strictly above the barrier graph shifted
// vertically by `offset`. The barrier must be a d = 0 entire rotation graph;
// it is interpolated by cubic Hermite segments. OutOfRange outside its rho range.
bool in_mean_convex_side(double rho, double height, const SampledCurve& barrier, double offset);

// Divided differences m_i = (h_{i+1} - h_i) / (rho_{i+1} - rho_i) must not
// decrease; residual (m_{i-1} - m_i) / max(1, |m_i|).
VerificationReport convexity_check(const SampledCurve& curve, double tol = kConvexityTolerance);

// Adds eps sin(rho) to every height and eps cos(rho) to every finite slope.
SampledCurve perturb_curve(const SampledCurve& curve, double eps);

// "name: PASS residual=... tol=..." (or FAIL / N/A).
std::string to_text(const VerificationReport& r);
nlohmann::json to_json(const VerificationReport& r, bool with_details = false);

}  // namespace cmc
