#include "cmc/curve.hpp"

#include <cmath>
#include <string>

#include "cmc/error.hpp"

namespace cmc {

double critical_H(int n) { return static_cast<double>(n - 1) / n; }

void validate(const SurfaceParams& p) {
  if (p.n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  if (!(p.H > 0.0) || !std::isfinite(p.H))
    throw Error(ErrorCode::InvalidArgument, "H must be a finite value > 0");
  if (!std::isfinite(p.d)) throw Error(ErrorCode::InvalidArgument, "d must be finite");
}

Curvature curvature_of(const SurfaceParams& p) {
  validate(p);
  Curvature c;
  const double hc = critical_H(p.n);
  if (p.H == hc) {
    c.regime = Regime::Critical;
    c.kappa = 1.0;
  } else {
    c.regime = p.H < hc ? Regime::Subcritical : Regime::Supercritical;
    c.kappa = p.n * p.H / (p.n - 1);
  }
  c.weight = c.kappa * (p.n - 1);
  return c;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Subcritical: return "Subcritical";
    case Regime::Critical: return "Critical";
    case Regime::Supercritical: return "Supercritical";
  }
  return "?";
}

std::string_view to_string(CurveKind k) {
  return k == CurveKind::Rotation ? "Rotation" : "Translation";
}

std::string_view to_string(EndBehavior b) {
  switch (b) {
    case EndBehavior::HorizontalTangent: return "HorizontalTangent";
    case EndBehavior::VerticalTangent: return "VerticalTangent";
    case EndBehavior::Unbounded: return "Unbounded";
    case EndBehavior::Regular: return "Regular";
  }
  return "?";
}

double unit_slope_sine(double slope) {
  if (std::isinf(slope)) return std::copysign(1.0, slope);
  return slope / std::hypot(1.0, slope);
}

}  // namespace cmc
