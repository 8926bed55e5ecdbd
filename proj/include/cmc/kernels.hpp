#pragma once

// Panel quadrature kernels. A generating curve's heights are prefix sums of
// independent per-panel integrals; the panels are the data-parallel part of
// every curve construction. The serial version is the reference the OpenMP
// version is tested against (results must agree bit for bit, since each
// panel is computed by the same code regardless of the thread that runs it).

#include <functional>
#include <span>
#include <vector>

#include "cmc/numerics.hpp"

namespace cmc {

enum class Execution { Serial, Parallel };

struct PanelRule {
  enum class Kind {
    Regular,    // plain adaptive quadrature in t
    NearLeft,   // t = anchor + s^2, singular point left of the panel
    NearRight,  // t = anchor - s^2, singular point right of the panel
    LogLeft,    // t = anchor + e^sigma, non-integrable 1/(t - anchor) growth
  };
  Kind kind = Kind::Regular;
  double anchor = 0.0;
};

// Integrand for panel quadrature. `near(anchor, delta)` evaluates f at
// anchor + delta with delta known exactly; substituted rules call it so that
// profile functions vanishing at the anchor can be evaluated from the offset
// instead of from the rounded abscissa. When empty, f(anchor + delta) is used.
struct PanelIntegrand {
  RealFn f;
  std::function<double(double anchor, double delta)> near;

  double at_offset(double anchor, double delta) const {
    return near ? near(anchor, delta) : f(anchor + delta);
  }
};

// out[i] = int_{nodes[i]}^{nodes[i+1]} f, using rules[i]. f must be reentrant.
std::vector<double> integrate_panels_serial(const PanelIntegrand& f, std::span<const double> nodes,
                                            std::span<const PanelRule> rules, double tol);
std::vector<double> integrate_panels_parallel(const PanelIntegrand& f,
                                              std::span<const double> nodes,
                                              std::span<const PanelRule> rules, double tol);
std::vector<double> integrate_panels(const PanelIntegrand& f, std::span<const double> nodes,
                                     std::span<const PanelRule> rules, double tol, Execution ex);

// Heights with heights[anchor_index] = 0, accumulated outward from the anchor.
std::vector<double> accumulate_from(std::span<const double> panel_integrals,
                                    std::size_t anchor_index);

}  // namespace cmc
