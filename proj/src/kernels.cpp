#include "cmc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "cmc/error.hpp"

namespace cmc {

namespace {

double integrate_one(const PanelIntegrand& f, double lo, double hi, const PanelRule& rule,
                     double tol) {
  const double a = rule.anchor;
  switch (rule.kind) {
    case PanelRule::Kind::Regular:
      return integrate_regular(f.f, lo, hi, tol);
    case PanelRule::Kind::NearLeft:
      return integrate_regular([&](double s) { return 2.0 * s * f.at_offset(a, s * s); },
                               std::sqrt(std::max(0.0, lo - a)), std::sqrt(std::max(0.0, hi - a)),
                               tol);
    case PanelRule::Kind::NearRight:
      return integrate_regular([&](double s) { return 2.0 * s * f.at_offset(a, -s * s); },
                               std::sqrt(std::max(0.0, a - hi)), std::sqrt(std::max(0.0, a - lo)),
                               tol);
    case PanelRule::Kind::LogLeft:
      return integrate_regular(
          [&](double sigma) {
            const double e = std::exp(sigma);
            return f.at_offset(a, e) * e;
          },
          std::log(lo - a), std::log(hi - a), tol);
  }
  return 0.0;
}

void check_shapes(std::span<const double> nodes, std::span<const PanelRule> rules) {
  if (nodes.size() < 2 || rules.size() + 1 != nodes.size())
    throw Error(ErrorCode::InvalidArgument, "need one rule per panel");
}

}  // namespace

std::vector<double> integrate_panels_serial(const PanelIntegrand& f, std::span<const double> nodes,
                                            std::span<const PanelRule> rules, double tol) {
  check_shapes(nodes, rules);
  std::vector<double> out(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i)
    out[i] = integrate_one(f, nodes[i], nodes[i + 1], rules[i], tol);
  return out;
}

std::vector<double> integrate_panels_parallel(const PanelIntegrand& f, std::span<const double> nodes,
                                              std::span<const PanelRule> rules, double tol) {
  check_shapes(nodes, rules);
  const long count = static_cast<long>(rules.size());
  std::vector<double> out(rules.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < count; ++i) {
    try {
      out[i] = integrate_one(f, nodes[i], nodes[i + 1], rules[i], tol);
    } catch (...) {
#pragma omp critical(cmc_panel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> integrate_panels(const PanelIntegrand& f, std::span<const double> nodes,
                                     std::span<const PanelRule> rules, double tol, Execution ex) {
  return ex == Execution::Parallel ? integrate_panels_parallel(f, nodes, rules, tol)
                                   : integrate_panels_serial(f, nodes, rules, tol);
}

std::vector<double> accumulate_from(std::span<const double> panel_integrals,
                                    std::size_t anchor_index) {
  const std::size_t n = panel_integrals.size() + 1;
  if (anchor_index >= n) throw Error(ErrorCode::OutOfRange, "anchor index beyond nodes");
  std::vector<double> h(n, 0.0);
  for (std::size_t i = anchor_index + 1; i < n; ++i) h[i] = h[i - 1] + panel_integrals[i - 1];
  for (std::size_t i = anchor_index; i-- > 0;) h[i] = h[i + 1] - panel_integrals[i];
  return h;
}

}  // namespace cmc
