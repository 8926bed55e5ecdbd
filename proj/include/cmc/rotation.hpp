#pragma once

// Rotation H-hypersurfaces about {0} x R in H^n x R.
//
// The generating curve (rho, lambda(rho)) satisfies the first integral
//
//   sinh^{n-1}(rho) lambda' / sqrt(1 + lambda'^2) = nH I_{n-1}(rho) + d,
//
// so lambda' = Q = (nH I_{n-1} + d) / sqrt(M P) with
//
//   M = sinh^{n-1} - nH I_{n-1} - d,   P = sinh^{n-1} + nH I_{n-1} + d.
//
// The family splits on sign(H - (n-1)/n) and sign(d); the breakpoints are the
// zeros of M and P that bound the interval where M P > 0.

#include <optional>
#include <string_view>

#include "cmc/curve.hpp"
#include "cmc/sampling.hpp"

namespace cmc {

enum class ProfileFn { M, P, Q };

double eval_profile(const SurfaceParams& p, ProfileFn which, double t);

// The unique C_H > 0 with coth(C_H) = nH/(n-1); requires H > (n-1)/n.
double critical_point_CH(int n, double H);

enum class RotationClass {
  EntireGraph_S,
  Cylinder_C,
  NodoidLike_D,
  Sphere_K,
  Unduloid_U,
  Nodoid_N,
  NoSolution,
  Unclassified,
};

std::string_view to_string(RotationClass c);

// Which profile function vanishes at an end of the existence interval.
enum class EndZero { None, M, P };

struct RotationBreakpoints {
  Regime regime = Regime::Critical;
  std::optional<double> C_H;
  std::optional<double> D_H;
  std::optional<double> f_H_d;
  std::optional<double> left_end;
  std::optional<double> right_end;  // +inf for curves unbounded in rho
  std::optional<double> sign_change;
  EndZero left_zero = EndZero::None;
  EndZero right_zero = EndZero::None;
};

struct RotationClassification {
  RotationClass tag = RotationClass::NoSolution;
  RotationBreakpoints breakpoints;
};

RotationClassification classify_rotation(const SurfaceParams& p);

// Fundamental arc of lambda_{H,d}, height 0 at the left end. Throws
// OutsideDomain when the breakpoints describe no existence interval.
SampledCurve sample_lambda(const SurfaceParams& p, const RotationBreakpoints& bp,
                           const SampleGrid& grid = {});

struct AsymptoteSpec {
  enum class Kind { LinearSlope, Exponential2D, Integral3D, ExponentialND, None };
  Kind kind = Kind::None;
  double value = 0.0;  // slope (LinearSlope) or prefactor
  double rate = 0.0;   // exponential rate where the family fixes one
};

std::string_view to_string(AsymptoteSpec::Kind k);

AsymptoteSpec asymptote_rotation(const SurfaceParams& p);

// Completes a fundamental arc by the symmetries of its class:
//   Cylinder/NodoidLike: mirror in the slice t = 0;
//   Sphere: mirror in the vertical-tangent height, then across the axis
//           (negative rho) into a closed loop;
//   Unduloid/Nodoid: reflect in the vertical tangent at the right end and
//           repeat `periods` times, shifted by 2 (lambda(right) - lambda(left));
//   EntireGraph: unchanged.
SampledCurve extend_curve(const SampledCurve& curve, RotationClass cls, int periods = 2);

// Vertical period 2 (lambda(right_end) - lambda(left_end)) of a fundamental arc.
double vertical_period(const SampledCurve& curve);

// rho where a NodoidLike fundamental arc returns to height 0, i.e. where the
// arc meets its mirror image.
std::optional<double> self_intersection_rho(const SampledCurve& curve);

}  // namespace cmc
