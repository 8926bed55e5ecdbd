#pragma once

#include <optional>
#include <vector>

#include "cmc/kernels.hpp"
#include "cmc/numerics.hpp"

namespace cmc {

inline constexpr double kDefaultRhoMax = 30.0;
inline constexpr int kDefaultSamples = 400;

struct SampleGrid {
  int samples = kDefaultSamples;
  std::optional<double> rho_max;  // required for curves unbounded in rho
  double tolerance = kDefaultQuadTol;
  Execution execution = Execution::Parallel;
};

// `count` nodes on [a, b], uniform in s = sqrt(t - a) (resp. sqrt(b - t)) in a
// boundary layer at each flagged end and uniform in t in between. The map is
// C^1 at the layer junctions. Layer width is min(1, (b - a)/4) when both ends
// are flagged and (b - a)/2 when only one is.
std::vector<double> layered_nodes(double a, double b, SingularSpec ends, int count);

// One quadrature rule per panel: panels left of the midpoint of a doubly
// singular interval use the left substitution, the rest the right one.
std::vector<PanelRule> layered_rules(const std::vector<double>& nodes, SingularSpec ends);

}  // namespace cmc
