#include "cmc/translation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "cmc/error.hpp"
#include "cmc/hypfun.hpp"
#include "cmc/kernels.hpp"
#include "cmc/rotation.hpp"

namespace cmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBracketSpan = 700.0;
using Gauss20 = boost::math::quadrature::gauss<double, 20>;

// Signed integral of h over [0, delta].
template <class F>
double integrate_to(F h, double delta) {
  if (delta == 0.0) return 0.0;
  const double v = Gauss20::integrate(h, std::min(0.0, delta), std::max(0.0, delta));
  return delta < 0.0 ? -v : v;
}

class TranslationProfile {
 public:
  explicit TranslationProfile(const SurfaceParams& p)
      : n_(p.n), d_(p.d), cv_(curvature_of(p)) {
    if (cv_.regime == Regime::Subcritical) {
      const double th = std::atanh(cv_.kappa);
      t_h_ = th;
      d_h_ = cosh_pow(th, n_ - 1) - cv_.weight * eval_moment(MomentKind::CoshMoment, n_ - 1, th);
    }
  }

  double flux_term(double t) const {
    return cv_.weight * eval_moment(MomentKind::CoshMoment, n_ - 1, t) + d_;
  }

  double R(double t) const {
    if (t_h_ && std::abs(t - *t_h_) < 1.0) return R_near_tH(t - *t_h_);
    // One recurrence step of (n-1) J_{n-1} pulled out so that the leading
    // exponentials cancel analytically.
    const double k = cv_.kappa;
    const double c_minus_ks = 0.5 * ((1.0 - k) * std::exp(t) + (1.0 + k) * std::exp(-t));
    if (n_ == 2) return c_minus_ks - d_;
    return cosh_pow(t, n_ - 2) * c_minus_ks -
           k * (n_ - 2) * eval_moment(MomentKind::CoshMoment, n_ - 3, t) - d_;
  }

  double S(double t) const { return cosh_pow(t, n_ - 1) + flux_term(t); }

  // R and S at anchor + delta from the anchor value plus the integral of the
  // derivative (accurate in delta next to a zero at the anchor).
  double R_offset(double anchor, double delta) const {
    if (t_h_ && anchor == *t_h_) return R_near_tH(delta);
    const double w = cv_.weight;
    return R(anchor) + integrate_to(
                           [&](double r) {
                             const double t = anchor + r;
                             return cosh_pow(t, n_ - 2) * ((n_ - 1) * std::sinh(t) - w * std::cosh(t));
                           },
                           delta);
  }

  double S_offset(double anchor, double delta) const {
    const double w = cv_.weight;
    return S(anchor) + integrate_to(
                           [&](double r) {
                             const double t = anchor + r;
                             return cosh_pow(t, n_ - 2) * ((n_ - 1) * std::sinh(t) + w * std::cosh(t));
                           },
                           delta);
  }

  double T(double t) const { return quotient(t, R(t), S(t)); }
  double T_offset(double anchor, double delta) const {
    return quotient(anchor + delta, R_offset(anchor, delta), S_offset(anchor, delta));
  }

  const Curvature& curvature() const { return cv_; }
  std::optional<double> t_H() const { return t_h_; }
  std::optional<double> d_H() const { return d_h_; }

 private:
  // Around t_H the derivative (n-1) cosh^{n-2}(t) (sinh t - tanh(t_H) cosh t)
  // equals (n-1) cosh^{n-2}(t) sinh(t - t_H) / cosh(t_H), which is evaluated
  // from the offset directly. R(t_H) = d_H - d is exactly 0 for d = d_H.
  double R_near_tH(double delta) const {
    const double th = *t_h_;
    const double ch = std::cosh(th);
    return (*d_h_ - d_) + integrate_to(
                              [&](double r) {
                                return (n_ - 1) * cosh_pow(th + r, n_ - 2) * std::sinh(r) / ch;
                              },
                              delta);
  }

  double quotient(double t, double r, double s) const {
    if (!(r > 0.0 && s > 0.0))
      throw Error(ErrorCode::OutsideDomain,
                  "T undefined at t=" + std::to_string(t) + " (R S <= 0)");
    return flux_term(t) / (std::sqrt(r) * std::sqrt(s));
  }

  int n_;
  double d_;
  Curvature cv_;
  std::optional<double> t_h_;
  std::optional<double> d_h_;
};

// First zero of f after `start`, returned on the side where f has `feasible_sign`.
std::optional<double> zero_after(const RealFn& f, double start, int feasible_sign) {
  try {
    return refine_root_feasible(f, expand_bracket(f, start, +1, kBracketSpan), feasible_sign);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoSignChange) return std::nullopt;
    throw;
  }
}

// First interval [left, right] past 0 on which R > 0 and S > 0.
void find_interval(const TranslationProfile& prof, const SurfaceParams& p,
                   TranslationBreakpoints& bp) {
  auto R = [&](double t) { return prof.R(t); };
  auto S = [&](double t) { return prof.S(t); };

  double left = 0.0;
  if (p.d < -1.0) {
    bp.alpha = zero_after(S, 0.0, +1);
    if (!bp.alpha) return;
    left = *bp.alpha;
    bp.left_zero = TEndZero::S;
  } else if (p.d == -1.0) {
    bp.left_zero = TEndZero::S;  // S(0) = 0: vertical tangent at the axis
  }

  const double r_left = prof.R(left);
  const std::optional<double> th = prof.t_H();
  if (r_left > 0.0) {
    bp.left_end = left;
    // Subcritical R decreases up to t_H and increases after it, so any zero
    // past the left end sits in [left, t_H] when R(t_H) < 0.
    if (th) {
      if (*th > left && prof.R(*th) < 0.0) {
        bp.c = refine_root_feasible(R, Bracket{left, *th, +1, -1}, +1);
      }
    } else {
      bp.c = zero_after(R, left, +1);
    }
    if (bp.c) {
      bp.right_end = bp.c;
      bp.right_zero = TEndZero::R;
    } else {
      bp.right_end = kInf;
    }
    return;
  }

  // R <= 0 at the left end: only subcritical R comes back up.
  if (!th) {
    bp.no_solution = true;
    bp.left_zero = TEndZero::None;
    return;
  }
  const double from = std::max(left, *th);
  auto after = zero_after(R, from, +1);
  if (!after) return;
  bp.left_end = after;
  bp.left_zero = TEndZero::R;
  bp.right_end = kInf;
}

}  // namespace

double eval_tprofile(const SurfaceParams& p, TProfileFn which, double t) {
  if (t < 0.0) throw Error(ErrorCode::OutsideDomain, "profile needs t >= 0");
  const TranslationProfile prof(p);
  switch (which) {
    case TProfileFn::R: return prof.R(t);
    case TProfileFn::S: return prof.S(t);
    case TProfileFn::T: return prof.T(t);
  }
  return 0.0;
}

double subcritical_tH(int n, double H) {
  const SurfaceParams p{n, H, 0.0};
  const Curvature cv = curvature_of(p);
  if (cv.regime != Regime::Subcritical)
    throw Error(ErrorCode::RegimeMismatch, "t_H needs 0 < H < (n-1)/n");
  return std::atanh(cv.kappa);
}

double graph_constant_dH(int n, double H) {
  const double th = subcritical_tH(n, H);
  const Curvature cv = curvature_of({n, H, 0.0});
  return cosh_pow(th, n - 1) - cv.weight * eval_moment(MomentKind::CoshMoment, n - 1, th);
}

std::string_view to_string(TranslationClass c) {
  switch (c) {
    case TranslationClass::EmbeddedConvex_T0: return "EmbeddedConvex_T0";
    case TranslationClass::EmbeddedNonsmooth: return "EmbeddedNonsmooth";
    case TranslationClass::Immersed_Tm1: return "Immersed_Tm1";
    case TranslationClass::ImmersedSelfInt: return "ImmersedSelfInt";
    case TranslationClass::CompleteGraph_T2: return "CompleteGraph_T2";
    case TranslationClass::NoSolution: return "NoSolution";
    case TranslationClass::Unclassified: return "Unclassified";
  }
  return "?";
}

TranslationClassification classify_translation(const SurfaceParams& p) {
  const TranslationProfile prof(p);
  const Curvature& cv = prof.curvature();
  TranslationClassification out;
  TranslationBreakpoints& bp = out.breakpoints;
  bp.t_H = prof.t_H();
  bp.d_H = prof.d_H();

  if (cv.regime != Regime::Subcritical && p.d >= 1.0) {
    bp.no_solution = true;
    out.tag = TranslationClass::NoSolution;
    return out;
  }

  find_interval(prof, p, bp);
  if (bp.no_solution) {
    out.tag = TranslationClass::NoSolution;
    return out;
  }

  if (cv.regime == Regime::Critical && p.n >= 3) {
    if (p.d == 0.0) {
      out.tag = TranslationClass::EmbeddedConvex_T0;
    } else if (p.d > 0.0) {
      out.tag = TranslationClass::EmbeddedNonsmooth;
    } else if (p.d == -1.0) {
      out.tag = TranslationClass::Immersed_Tm1;
    } else {
      out.tag = TranslationClass::ImmersedSelfInt;
    }
    return out;
  }

  if (cv.regime == Regime::Subcritical && std::abs(p.d - *bp.d_H) <= 1e-12 * std::abs(*bp.d_H)) {
    out.tag = TranslationClass::CompleteGraph_T2;
    return out;
  }

  out.tag = TranslationClass::Unclassified;
  return out;
}

SampledCurve sample_mu(const SurfaceParams& p, const TranslationBreakpoints& bp,
                       const SampleGrid& grid) {
  if (bp.no_solution || !bp.left_end || !bp.right_end)
    throw Error(ErrorCode::OutsideDomain, "no existence interval for these parameters");
  const TranslationProfile prof(p);
  const double a = *bp.left_end;
  const bool unbounded = std::isinf(*bp.right_end);
  const double b = unbounded ? grid.rho_max.value_or(kDefaultRhoMax) : *bp.right_end;
  if (!(b > a)) throw Error(ErrorCode::InsufficientRange, "rho_max must exceed the left end");

  const SingularSpec ends{bp.left_zero != TEndZero::None,
                          !unbounded && bp.right_zero != TEndZero::None};
  const std::vector<double> nodes = layered_nodes(a, b, ends, grid.samples);
  const std::vector<PanelRule> rules = layered_rules(nodes, ends);
  auto t_at = [&prof, &bp](double anchor, double delta) {
    const TEndZero z = delta > 0.0 ? bp.left_zero : bp.right_zero;
    return z == TEndZero::None || std::abs(delta) > 1.0 ? prof.T(anchor + delta)
                                                        : prof.T_offset(anchor, delta);
  };
  const PanelIntegrand f{[&prof](double t) { return prof.T(t); }, t_at};
  const std::vector<double> heights =
      accumulate_from(integrate_panels(f, nodes, rules, grid.tolerance, grid.execution), 0);

  SampledCurve c;
  c.kind = CurveKind::Translation;
  c.params = p;
  c.samples.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    c.samples[i].rho = nodes[i];
    c.samples[i].height = heights[i];
  }
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    const PanelRule& r = rules[i];
    c.samples[i].slope = r.kind == PanelRule::Kind::Regular ? prof.T(nodes[i])
                                                            : t_at(r.anchor, nodes[i] - r.anchor);
  }

  // The flux term equals +cosh^{n-1} where R vanishes and -cosh^{n-1} where S does.
  auto end_slope = [](TEndZero z) { return z == TEndZero::R ? kInf : -kInf; };
  if (ends.left_singular) {
    c.samples.front().slope = end_slope(bp.left_zero);
    c.left_behavior = EndBehavior::VerticalTangent;
  } else {
    c.samples.front().slope = prof.T(a);
    c.left_behavior = c.samples.front().slope == 0.0 ? EndBehavior::HorizontalTangent
                                                     : EndBehavior::Regular;
  }
  if (ends.right_singular) {
    c.samples.back().slope = end_slope(bp.right_zero);
    c.right_behavior = EndBehavior::VerticalTangent;
  } else {
    c.samples.back().slope = prof.T(b);
    c.right_behavior = unbounded ? EndBehavior::Unbounded : EndBehavior::Regular;
  }
  return c;
}

SampledCurve build_complete_graph(int n, double H, double rho_max, const SampleGrid& grid) {
  const double th = subcritical_tH(n, H);
  const SurfaceParams p{n, H, graph_constant_dH(n, H)};
  const TranslationProfile prof(p);
  const double anchor = th + 1.0;
  if (!(rho_max > anchor))
    throw Error(ErrorCode::InsufficientRange, "rho_max must exceed t_H + 1");
  if (grid.samples < 32) throw Error(ErrorCode::InsufficientSamples, "need at least 32 samples");

  // Offsets 10^{-6 + 6k/(m-1)} from t_H, k = 0..m-1, with m - 1 a multiple of
  // 12 so every half decade is a node; the last offset is the anchor.
  const int m = 12 * std::max(1, static_cast<int>(std::lround(grid.samples * 0.3 / 12))) + 1;
  const int uniform = grid.samples - m;
  std::vector<double> offsets(m);
  for (int k = 0; k < m; ++k) offsets[k] = std::pow(10.0, -6.0 + 6.0 * k / (m - 1));
  offsets.back() = 1.0;

  std::vector<double> nodes;
  nodes.reserve(grid.samples);
  for (double o : offsets) nodes.push_back(th + o);
  nodes.back() = anchor;
  for (int k = 1; k <= uniform; ++k) nodes.push_back(anchor + (rho_max - anchor) * k / uniform);
  nodes.back() = rho_max;

  std::vector<PanelRule> rules(nodes.size() - 1);
  for (int k = 0; k + 1 < m; ++k) rules[k] = {PanelRule::Kind::LogLeft, th};

  auto t_at = [&prof](double a, double delta) {
    return std::abs(delta) > 1.0 ? prof.T(a + delta) : prof.T_offset(a, delta);
  };
  const PanelIntegrand f{[&prof](double t) { return prof.T(t); }, t_at};
  const std::vector<double> heights = accumulate_from(
      integrate_panels(f, nodes, rules, grid.tolerance, grid.execution), m - 1);

  SampledCurve c;
  c.kind = CurveKind::Translation;
  c.params = p;
  c.samples.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const bool near = static_cast<int>(i) < m;
    c.samples[i] = {nodes[i], heights[i], near ? t_at(th, offsets[i]) : prof.T(nodes[i])};
  }
  c.left_behavior = EndBehavior::Unbounded;
  c.right_behavior = EndBehavior::Unbounded;
  return c;
}

CurvatureSample principal_curvatures(const SampledCurve& curve, std::size_t i) {
  if (i >= curve.samples.size()) throw Error(ErrorCode::OutOfRange, "sample index out of range");
  const CurveSample& s = curve.samples[i];
  if (!std::isfinite(s.slope))
    throw Error(ErrorCode::VerticalPoint, "vertical tangent at rho=" + std::to_string(s.rho));
  const SurfaceParams& p = curve.params;
  const Curvature cv = curvature_of(p);
  const double t = s.rho;
  const int n = p.n;

  double c, dc, g, dg, rs, slice;
  if (curve.kind == CurveKind::Translation) {
    const TranslationProfile prof(p);
    c = cosh_pow(t, n - 1);
    dc = (n - 1) * cosh_pow(t, n - 2) * std::sinh(t);
    g = prof.flux_term(t);
    dg = cv.weight * c;
    rs = prof.R(t) * prof.S(t);
    slice = std::tanh(t);
  } else {
    if (t <= 0.0) throw Error(ErrorCode::OutsideDomain, "slice curvature undefined on the axis");
    c = sinh_pow(t, n - 1);
    dc = (n - 1) * sinh_pow(t, n - 2) * std::cosh(t);
    g = cv.weight * eval_moment(MomentKind::SinhMoment, n - 1, t) + p.d;
    dg = cv.weight * c;
    rs = eval_profile(p, ProfileFn::M, t) * eval_profile(p, ProfileFn::P, t);
    slice = 1.0 / std::tanh(t);
  }
  if (!(rs > 0.0)) throw Error(ErrorCode::OutsideDomain, "sample outside the existence interval");
  const double second = c * (dg * c - g * dc) / std::pow(rs, 1.5);
  const double q = 1.0 + s.slope * s.slope;
  CurvatureSample out;
  out.at_rho = t;
  out.k_V = second / std::pow(q, 1.5);
  out.k_P = s.slope / std::sqrt(q) * slice;
  return out;
}

}  // namespace cmc
