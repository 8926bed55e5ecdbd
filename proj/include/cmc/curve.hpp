#pragma once

#include <string_view>
#include <vector>

namespace cmc {

// (n, H, d): ambient dimension of H^n, normalized mean curvature w.r.t. the
// upward normal, and the first-integral (flux) constant.
struct SurfaceParams {
  int n = 2;
  double H = 0.5;
  double d = 0.0;
};

enum class Regime { Subcritical, Critical, Supercritical };

// Derived constants shared by the rotation and translation profiles.
struct Curvature {
  Regime regime = Regime::Critical;
  double kappa = 1.0;   // nH/(n-1); exactly 1 in the critical regime
  double weight = 1.0;  // nH, computed as kappa*(n-1)
};

// (n-1)/n, the mean curvature of horospheres.
double critical_H(int n);

// Validates n >= 2, H > 0 and finite d; throws InvalidArgument otherwise.
void validate(const SurfaceParams& p);

// Regime compares H against (n-1)/n exactly, so callers wanting the critical
// family must pass critical_H(n) bit for bit.
Curvature curvature_of(const SurfaceParams& p);

std::string_view to_string(Regime r);

enum class CurveKind { Rotation, Translation };
enum class EndBehavior { HorizontalTangent, VerticalTangent, Unbounded, Regular };

std::string_view to_string(CurveKind k);
std::string_view to_string(EndBehavior b);

struct CurveSample {
  double rho = 0.0;
  double height = 0.0;
  double slope = 0.0;  // +-inf at vertical tangents
};

// Generating curve (rho, height). On a fundamental arc rho is strictly
// increasing; extended curves (see extend_curve) are ordered along the arc and
// may revisit rho values or use signed rho across the axis.
struct SampledCurve {
  CurveKind kind = CurveKind::Rotation;
  SurfaceParams params;
  std::vector<CurveSample> samples;
  EndBehavior left_behavior = EndBehavior::Regular;
  EndBehavior right_behavior = EndBehavior::Regular;
  bool fundamental = true;
};

// slope / sqrt(1 + slope^2), mapping +-inf to +-1.
double unit_slope_sine(double slope);

}  // namespace cmc
