#pragma once

// Translation H-hypersurfaces: orbits of a curve c(rho) = (tanh(rho/2), mu(rho))
// under the hyperbolic translations along a geodesic, so every slice of the
// surface is an equidistant hypersurface at distance rho from a totally
// geodesic hyperplane. The first integral is
//
//   cosh^{n-1}(rho) mu' / sqrt(1 + mu'^2) = nH J_{n-1}(rho) + d,
//
// giving mu' = T = (nH J_{n-1} + d) / sqrt(R S) with
//
//   R = cosh^{n-1} - nH J_{n-1} - d,   S = cosh^{n-1} + nH J_{n-1} + d.

#include <cstddef>
#include <optional>
#include <string_view>

#include "cmc/curve.hpp"
#include "cmc/sampling.hpp"

namespace cmc {

enum class TProfileFn { R, S, T };

double eval_tprofile(const SurfaceParams& p, TProfileFn which, double t);

// atanh(nH/(n-1)); requires 0 < H < (n-1)/n.
double subcritical_tH(int n, double H);

// cosh^{n-1}(t_H) - nH J_{n-1}(t_H): the d for which R has a double zero at t_H.
double graph_constant_dH(int n, double H);

enum class TranslationClass {
  EmbeddedConvex_T0,
  EmbeddedNonsmooth,
  Immersed_Tm1,
  ImmersedSelfInt,
  CompleteGraph_T2,
  NoSolution,
  Unclassified,
};

std::string_view to_string(TranslationClass c);

enum class TEndZero { None, R, S };

struct TranslationBreakpoints {
  std::optional<double> t_H;
  std::optional<double> d_H;
  std::optional<double> alpha;  // zero of S, present iff d < -1
  std::optional<double> c;      // zero of R bounding the curve on the right
  bool no_solution = false;
  // Interval sampled by sample_mu. right_end is +inf when R stays positive.
  std::optional<double> left_end;
  std::optional<double> right_end;
  TEndZero left_zero = TEndZero::None;
  TEndZero right_zero = TEndZero::None;
};

struct TranslationClassification {
  TranslationClass tag = TranslationClass::Unclassified;
  TranslationBreakpoints breakpoints;
};

// Tabulated cases are H = (n-1)/n with n >= 3, and subcritical H with d = d_H
// (relative tolerance 1e-12). d >= 1 with H >= (n-1)/n has no solution since
// R(0) = 1 - d and R is decreasing. Everything else is Unclassified but still
// carries the first interval where R S > 0, so it can be sampled.
TranslationClassification classify_translation(const SurfaceParams& p);

// Fundamental arc of mu_{H,d} on [left_end, right_end] (rho_max if unbounded),
// height 0 at the left end. For CompleteGraph_T2 this samples the compact
// piece [0, t_H) only; use build_complete_graph for the graph over (t_H, inf).
SampledCurve sample_mu(const SurfaceParams& p, const TranslationBreakpoints& bp,
                       const SampleGrid& grid = {});

// The graph for d = d_H over (t_H, rho_max], anchored at height 0 at t_H + 1.
// Nodes are log-spaced in t - t_H from 1e-6 to 1 and uniform beyond; the
// height diverges to -inf at t_H, which is never sampled.
SampledCurve build_complete_graph(int n, double H, double rho_max, const SampleGrid& grid = {});

struct CurvatureSample {
  double k_V = 0.0;  // along the generating curve
  double k_P = 0.0;  // along the slice
  double at_rho = 0.0;
};

// Principal curvatures at curve.samples[i]. The second derivative comes from
// differentiating the first integral, mu'' = c (g' c - g c') / (R S)^{3/2} with
// c = cosh^{n-1} (sinh^{n-1} for rotation curves) and g the flux term. Throws
// VerticalPoint at infinite slopes and OutOfRange for a bad index.
CurvatureSample principal_curvatures(const SampledCurve& curve, std::size_t i);

}  // namespace cmc
