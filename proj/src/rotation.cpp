#include "cmc/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "cmc/error.hpp"
#include "cmc/hypfun.hpp"
#include "cmc/kernels.hpp"

namespace cmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBracketSpan = 700.0;

// M, P, Q for fixed parameters.
class RotationProfile {
 public:
  explicit RotationProfile(const SurfaceParams& p)
      : n_(p.n), d_(p.d), cv_(curvature_of(p)) {}

  double flux_term(double t) const {
    return cv_.weight * eval_moment(MomentKind::SinhMoment, n_ - 1, t) + d_;
  }

  double M(double t) const {
    if (t < 1.0)
      return sinh_pow(t, n_ - 1) - cv_.weight * eval_moment(MomentKind::SinhMoment, n_ - 1, t) - d_;
    // Large t: expand (n-1) I_{n-1} by one recurrence step so the leading
    // exponentials cancel analytically instead of numerically.
    const double k = cv_.kappa;
    const double s_minus_kc = 0.5 * ((1.0 - k) * std::exp(t) - (1.0 + k) * std::exp(-t));
    if (n_ == 2) return s_minus_kc + k - d_;
    return sinh_pow(t, n_ - 2) * s_minus_kc +
           k * (n_ - 2) * eval_moment(MomentKind::SinhMoment, n_ - 3, t) - d_;
  }

  double P(double t) const { return sinh_pow(t, n_ - 1) + flux_term(t); }

  // M and P at anchor + delta as the value at the anchor plus the integral
  // of the derivative, so that near a zero the result keeps relative accuracy
  // in delta instead of inheriting the rounding of anchor + delta.
  double M_offset(double anchor, double delta) const {
    return M(anchor) + integrate_derivative(anchor, delta, -1.0);
  }
  double P_offset(double anchor, double delta) const {
    return P(anchor) + integrate_derivative(anchor, delta, +1.0);
  }

  double Q_offset(double anchor, double delta) const {
    return quotient(anchor + delta, M_offset(anchor, delta), P_offset(anchor, delta));
  }

  double Q(double t) const { return quotient(t, M(t), P(t)); }

  const Curvature& curvature() const { return cv_; }

 private:
  double quotient(double t, double m, double p) const {
    if (!(m > 0.0 && p > 0.0))
      throw Error(ErrorCode::OutsideDomain,
                  "Q undefined at t=" + std::to_string(t) + " (M P <= 0)");
    return flux_term(t) / (std::sqrt(m) * std::sqrt(p));
  }

  // int_anchor^{anchor+delta} sinh^{n-2} ((n-1) cosh + sign nH sinh)
  double integrate_derivative(double anchor, double delta, double sign) const {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const double w = sign * cv_.weight;
    return Rule::integrate(
        [&](double r) {
          const double t = anchor + r;
          return sinh_pow(t, n_ - 2) * ((n_ - 1) * std::cosh(t) + w * std::sinh(t));
        },
        std::min(0.0, delta), std::max(0.0, delta)) * (delta < 0.0 ? -1.0 : 1.0);
  }

  int n_;
  double d_;
  Curvature cv_;
};

double root_after(const RealFn& f, double start, int feasible_sign, double span = kBracketSpan) {
  const Bracket b = expand_bracket(f, start, +1, span);
  return refine_root_feasible(f, b, feasible_sign);
}

}  // namespace

double eval_profile(const SurfaceParams& p, ProfileFn which, double t) {
  if (t < 0.0) throw Error(ErrorCode::OutsideDomain, "profile needs t >= 0");
  const RotationProfile prof(p);
  switch (which) {
    case ProfileFn::M: return prof.M(t);
    case ProfileFn::P: return prof.P(t);
    case ProfileFn::Q: return prof.Q(t);
  }
  return 0.0;
}

double critical_point_CH(int n, double H) {
  const SurfaceParams p{n, H, 0.0};
  const Curvature cv = curvature_of(p);
  if (cv.regime != Regime::Supercritical)
    throw Error(ErrorCode::RegimeMismatch, "C_H needs H > (n-1)/n");
  // coth(C) = kappa  <=>  tanh(C) = 1/kappa
  return std::atanh(1.0 / cv.kappa);
}

std::string_view to_string(RotationClass c) {
  switch (c) {
    case RotationClass::EntireGraph_S: return "EntireGraph_S";
    case RotationClass::Cylinder_C: return "Cylinder_C";
    case RotationClass::NodoidLike_D: return "NodoidLike_D";
    case RotationClass::Sphere_K: return "Sphere_K";
    case RotationClass::Unduloid_U: return "Unduloid_U";
    case RotationClass::Nodoid_N: return "Nodoid_N";
    case RotationClass::NoSolution: return "NoSolution";
    case RotationClass::Unclassified: return "Unclassified";
  }
  return "?";
}

RotationClassification classify_rotation(const SurfaceParams& p) {
  const RotationProfile prof(p);
  const Curvature& cv = prof.curvature();
  RotationClassification out;
  RotationBreakpoints& bp = out.breakpoints;
  bp.regime = cv.regime;

  auto M = [&](double t) { return prof.M(t); };
  auto P = [&](double t) { return prof.P(t); };
  auto g = [&](double t) { return prof.flux_term(t); };

  if (cv.regime != Regime::Supercritical) {
    // M increases from -d; for n = 2 at the critical value it only reaches 1 - d.
    if (p.n == 2 && cv.regime == Regime::Critical && p.d >= 1.0) {
      out.tag = RotationClass::NoSolution;
      return out;
    }
    if (p.d == 0.0) {
      out.tag = RotationClass::EntireGraph_S;
      bp.left_end = 0.0;
      bp.right_end = kInf;
    } else if (p.d > 0.0) {
      out.tag = RotationClass::Cylinder_C;
      bp.left_end = root_after(M, 0.0, +1);
      bp.left_zero = EndZero::M;
      bp.right_end = kInf;
    } else {
      out.tag = RotationClass::NodoidLike_D;
      bp.left_end = root_after(P, 0.0, +1);
      bp.left_zero = EndZero::P;
      bp.right_end = kInf;
      bp.sign_change = refine_root(g, expand_bracket(g, 0.0, +1, kBracketSpan), 0.0);
    }
    return out;
  }

  const double ch = critical_point_CH(p.n, p.H);
  const double dh = sinh_pow(ch, p.n - 1) -
                    cv.weight * eval_moment(MomentKind::SinhMoment, p.n - 1, ch);
  bp.C_H = ch;
  bp.D_H = dh;
  bp.f_H_d = dh - p.d;

  if (p.d == 0.0) {
    out.tag = RotationClass::Sphere_K;
    bp.left_end = 0.0;
    bp.right_end = root_after(M, ch, +1);
    bp.right_zero = EndZero::M;
  } else if (p.d > 0.0) {
    if (p.d >= dh) {
      // Not covered by the sign tables: M <= 0 wherever it could vanish.
      out.tag = RotationClass::Unclassified;
      return out;
    }
    out.tag = RotationClass::Unduloid_U;
    bp.left_end = refine_root_feasible(M, Bracket{0.0, ch, -1, +1}, +1);
    bp.left_zero = EndZero::M;
    bp.right_end = root_after(M, ch, +1);
    bp.right_zero = EndZero::M;
  } else {
    out.tag = RotationClass::Nodoid_N;
    bp.left_end = root_after(P, 0.0, +1);
    bp.left_zero = EndZero::P;
    bp.right_end = root_after(M, ch, +1);
    bp.right_zero = EndZero::M;
    bp.sign_change = refine_root(g, expand_bracket(g, 0.0, +1, kBracketSpan), 0.0);
  }
  return out;
}

SampledCurve sample_lambda(const SurfaceParams& p, const RotationBreakpoints& bp,
                           const SampleGrid& grid) {
  if (!bp.left_end || !bp.right_end)
    throw Error(ErrorCode::OutsideDomain, "no existence interval for these parameters");
  const RotationProfile prof(p);
  const double a = *bp.left_end;
  const bool unbounded = std::isinf(*bp.right_end);
  if (unbounded && !grid.rho_max && kDefaultRhoMax <= a)
    throw Error(ErrorCode::InsufficientRange, "rho_max must exceed the left end");
  const double b = unbounded ? grid.rho_max.value_or(kDefaultRhoMax) : *bp.right_end;
  if (!(b > a)) throw Error(ErrorCode::InsufficientRange, "rho_max must exceed the left end");

  const SingularSpec ends{bp.left_zero != EndZero::None, !unbounded && bp.right_zero != EndZero::None};
  const std::vector<double> nodes = layered_nodes(a, b, ends, grid.samples);
  const std::vector<PanelRule> rules = layered_rules(nodes, ends);
  auto q_at = [&prof, &bp](double anchor, double delta) {
    // Offsets beyond the boundary layer are far from the zero; plain Q is exact there.
    const EndZero z = delta > 0.0 ? bp.left_zero : bp.right_zero;
    return z == EndZero::None || std::abs(delta) > 1.0 ? prof.Q(anchor + delta)
                                                       : prof.Q_offset(anchor, delta);
  };
  const PanelIntegrand q{[&prof](double t) { return prof.Q(t); }, q_at};
  const std::vector<double> panels =
      integrate_panels(q, nodes, rules, grid.tolerance, grid.execution);
  const std::vector<double> heights = accumulate_from(panels, 0);

  SampledCurve c;
  c.kind = CurveKind::Rotation;
  c.params = p;
  c.samples.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    c.samples[i].rho = nodes[i];
    c.samples[i].height = heights[i];
  }
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    const PanelRule& r = rules[i];
    c.samples[i].slope = r.kind == PanelRule::Kind::Regular ? prof.Q(nodes[i])
                                                            : q_at(r.anchor, nodes[i] - r.anchor);
  }

  // At a zero of M the flux term equals +sinh^{n-1} (slope +inf); at a zero
  // of P it equals -sinh^{n-1} (slope -inf).
  auto end_slope = [](EndZero z) { return z == EndZero::M ? kInf : -kInf; };
  if (ends.left_singular) {
    c.samples.front().slope = end_slope(bp.left_zero);
    c.left_behavior = EndBehavior::VerticalTangent;
  } else {
    c.samples.front().slope = a == 0.0 ? 0.0 : prof.Q(a);
    c.left_behavior = (a == 0.0 && p.d == 0.0) ? EndBehavior::HorizontalTangent : EndBehavior::Regular;
  }
  if (ends.right_singular) {
    c.samples.back().slope = end_slope(bp.right_zero);
    c.right_behavior = EndBehavior::VerticalTangent;
  } else {
    c.samples.back().slope = prof.Q(b);
    c.right_behavior = unbounded ? EndBehavior::Unbounded : EndBehavior::Regular;
  }
  return c;
}

std::string_view to_string(AsymptoteSpec::Kind k) {
  switch (k) {
    case AsymptoteSpec::Kind::LinearSlope: return "LinearSlope";
    case AsymptoteSpec::Kind::Exponential2D: return "Exponential2D";
    case AsymptoteSpec::Kind::Integral3D: return "Integral3D";
    case AsymptoteSpec::Kind::ExponentialND: return "ExponentialND";
    case AsymptoteSpec::Kind::None: return "None";
  }
  return "?";
}

AsymptoteSpec asymptote_rotation(const SurfaceParams& p) {
  const Curvature cv = curvature_of(p);
  AsymptoteSpec a;
  switch (cv.regime) {
    case Regime::Supercritical:
      return a;
    case Regime::Subcritical:
      a.kind = AsymptoteSpec::Kind::LinearSlope;
      a.value = cv.kappa / std::sqrt(1.0 - cv.kappa * cv.kappa);
      return a;
    case Regime::Critical:
      if (p.n == 2) {
        if (p.d >= 1.0) return a;
        a.kind = AsymptoteSpec::Kind::Exponential2D;
        a.value = 1.0 / std::sqrt(1.0 - p.d);
        a.rate = 0.5;
      } else if (p.n == 3) {
        a.kind = AsymptoteSpec::Kind::Integral3D;
        a.value = 1.0 / (2.0 * std::sqrt(2.0));
      } else {
        a.kind = AsymptoteSpec::Kind::ExponentialND;
      }
      return a;
  }
  return a;
}

double vertical_period(const SampledCurve& curve) {
  if (curve.samples.empty()) throw Error(ErrorCode::InsufficientSamples, "empty curve");
  return 2.0 * (curve.samples.back().height - curve.samples.front().height);
}

SampledCurve extend_curve(const SampledCurve& curve, RotationClass cls, int periods) {
  const auto& s = curve.samples;
  if (s.size() < 2) throw Error(ErrorCode::InsufficientSamples, "curve too short to extend");
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::BehaviorMismatch, what);
  };
  SampledCurve out = curve;
  out.samples.clear();
  out.fundamental = false;

  switch (cls) {
    case RotationClass::EntireGraph_S:
      return curve;

    case RotationClass::Cylinder_C:
    case RotationClass::NodoidLike_D: {
      require(curve.left_behavior == EndBehavior::VerticalTangent,
              "slice-symmetric classes need a vertical tangent at the left end");
      for (std::size_t i = s.size(); i-- > 1;)
        out.samples.push_back({s[i].rho, -s[i].height, -s[i].slope});
      out.samples.insert(out.samples.end(), s.begin(), s.end());
      out.left_behavior = curve.right_behavior;
      return out;
    }

    case RotationClass::Sphere_K: {
      require(curve.left_behavior == EndBehavior::HorizontalTangent &&
                  curve.right_behavior == EndBehavior::VerticalTangent,
              "sphere arc needs horizontal then vertical tangent");
      const double top = 2.0 * s.back().height;
      std::vector<CurveSample> meridian(s.begin(), s.end());
      for (std::size_t i = s.size() - 1; i-- > 0;)
        meridian.push_back({s[i].rho, top - s[i].height, -s[i].slope});
      out.samples = meridian;
      // Across the axis back to the bottom pole; both poles already present.
      for (std::size_t i = meridian.size() - 1; i-- > 1;)
        out.samples.push_back({-meridian[i].rho, meridian[i].height, -meridian[i].slope});
      out.left_behavior = EndBehavior::HorizontalTangent;
      out.right_behavior = EndBehavior::HorizontalTangent;
      return out;
    }

    case RotationClass::Unduloid_U:
    case RotationClass::Nodoid_N: {
      require(curve.left_behavior == EndBehavior::VerticalTangent &&
                  curve.right_behavior == EndBehavior::VerticalTangent,
              "periodic classes need vertical tangents at both ends");
      if (periods < 1) throw Error(ErrorCode::InvalidArgument, "periods must be >= 1");
      const double top = s.back().height;
      const double period = vertical_period(curve);
      for (int k = 0; k < periods; ++k) {
        const double shift = k * period;
        for (std::size_t i = (k == 0 ? 0 : 1); i < s.size(); ++i)
          out.samples.push_back({s[i].rho, s[i].height + shift, s[i].slope});
        for (std::size_t i = s.size() - 1; i-- > 0;)
          out.samples.push_back({s[i].rho, 2.0 * top - s[i].height + shift, -s[i].slope});
      }
      return out;
    }

    case RotationClass::NoSolution:
    case RotationClass::Unclassified:
      break;
  }
  throw Error(ErrorCode::BehaviorMismatch, "class has no generating curve to extend");
}

std::optional<double> self_intersection_rho(const SampledCurve& curve) {
  const auto& s = curve.samples;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i].height < 0.0 && s[i + 1].height >= 0.0) {
      const double w = -s[i].height / (s[i + 1].height - s[i].height);
      return s[i].rho + w * (s[i + 1].rho - s[i].rho);
    }
  }
  return std::nullopt;
}

}  // namespace cmc
