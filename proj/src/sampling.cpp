#include "cmc/sampling.hpp"

#include <algorithm>

#include "cmc/error.hpp"

namespace cmc {

std::vector<double> layered_nodes(double a, double b, SingularSpec ends, int count) {
  if (count < 2) throw Error(ErrorCode::InsufficientSamples, "need at least 2 samples");
  if (!(a < b)) throw Error(ErrorCode::InsufficientRange, "empty sampling interval");
  const double len = b - a;
  // A single singular end gets a wide layer: the profile varies on an O(1)
  // scale next to its zero and only slowly further out.
  const double layer = ends.left_singular && ends.right_singular ? std::min(1.0, 0.25 * len)
                                                                 : 0.5 * len;
  const double wl = ends.left_singular ? layer : 0.0;
  const double wr = ends.right_singular ? layer : 0.0;
  const double slope = len + wl + wr;
  const double pl = 2.0 * wl / slope;
  const double pr = 2.0 * wr / slope;

  std::vector<double> t(count);
  for (int k = 0; k < count; ++k) {
    const double u = static_cast<double>(k) / (count - 1);
    if (u < pl) {
      const double r = u / pl;
      t[k] = a + wl * r * r;
    } else if (u > 1.0 - pr) {
      const double r = (1.0 - u) / pr;
      t[k] = b - wr * r * r;
    } else {
      t[k] = a + wl + slope * (u - pl);
    }
  }
  t.front() = a;
  t.back() = b;
  return t;
}

std::vector<PanelRule> layered_rules(const std::vector<double>& nodes, SingularSpec ends) {
  const double a = nodes.front();
  const double b = nodes.back();
  const double mid = 0.5 * (a + b);
  std::vector<PanelRule> rules(nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double centre = 0.5 * (nodes[i] + nodes[i + 1]);
    if (ends.left_singular && (!ends.right_singular || centre < mid)) {
      rules[i] = {PanelRule::Kind::NearLeft, a};
    } else if (ends.right_singular) {
      rules[i] = {PanelRule::Kind::NearRight, b};
    }
  }
  return rules;
}

}  // namespace cmc
