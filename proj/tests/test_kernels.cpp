#include <doctest.h>

#include <cmath>
#include <cstring>

#include "cmc/error.hpp"
#include "cmc/kernels.hpp"
#include "cmc/rotation.hpp"
#include "cmc/sampling.hpp"

using namespace cmc;

TEST_CASE("serial and parallel panels agree bit for bit") {
  const SurfaceParams p{4, 0.75, 0.0};
  const auto nodes = layered_nodes(0.0, 30.0, {}, 401);
  const auto rules = layered_rules(nodes, {});
  PanelIntegrand f{[&](double t) { return eval_profile(p, ProfileFn::Q, t); }, {}};
  const auto s = integrate_panels_serial(f, nodes, rules, 1e-10);
  const auto q = integrate_panels_parallel(f, nodes, rules, 1e-10);
  REQUIRE(s.size() == q.size());
  CHECK(std::memcmp(s.data(), q.data(), s.size() * sizeof(double)) == 0);

  // Substituted rules at both ends.
  const auto n2 = layered_nodes(0.0, 1.0, {true, true}, 301);
  const auto r2 = layered_rules(n2, {true, true});
  PanelIntegrand g{[](double t) { return std::cosh(t) / std::sqrt(t * (1.0 - t)); },
                   [](double a, double delta) {
                     const double t = a + delta;
                     const double gap = a == 0.0 ? delta * (1.0 - t) : t * -delta;
                     return std::cosh(t) / std::sqrt(gap);
                   }};
  const auto s2 = integrate_panels_serial(g, n2, r2, 1e-10);
  const auto q2 = integrate_panels_parallel(g, n2, r2, 1e-10);
  CHECK(std::memcmp(s2.data(), q2.data(), s2.size() * sizeof(double)) == 0);
}

TEST_CASE("panel integrals sum to the whole") {
  const auto nodes = layered_nodes(0.0, 1.0, {true, false}, 51);
  const auto rules = layered_rules(nodes, {true, false});
  PanelIntegrand f{[](double t) { return 1.0 / std::sqrt(t); }, {}};
  const auto parts = integrate_panels(f, nodes, rules, 1e-12, Execution::Parallel);
  double sum = 0.0;
  for (double x : parts) sum += x;
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("offset evaluation is used by substituted rules") {
  // f(anchor + delta) computed from delta alone: sqrt(delta) has no rounding at the anchor.
  PanelIntegrand f{[](double t) { return 1.0 / std::sqrt(t - 1.0); },
                   [](double, double delta) { return 1.0 / std::sqrt(std::abs(delta)); }};
  const double nodes[] = {1.0, 2.0};
  const PanelRule rules[] = {{PanelRule::Kind::NearLeft, 1.0}};
  const auto r = integrate_panels_serial(f, nodes, rules, 1e-12);
  CHECK(r[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("log rule integrates 1/(t - a) growth") {
  PanelIntegrand f{[](double t) { return 1.0 / (t - 1.0); }, {}};
  const double nodes[] = {1.0 + 1e-6, 2.0};
  const PanelRule rules[] = {{PanelRule::Kind::LogLeft, 1.0}};
  CHECK(integrate_panels_serial(f, nodes, rules, 1e-12)[0] ==
        doctest::Approx(-std::log(1e-6)).epsilon(1e-10));
}

TEST_CASE("rule and node counts must match") {
  PanelIntegrand f{[](double t) { return t; }, {}};
  const double nodes[] = {0.0, 1.0, 2.0};
  const PanelRule rules[] = {{}};
  CHECK_THROWS_AS(integrate_panels_serial(f, nodes, rules, 1e-10), Error);
}

TEST_CASE("parallel failures propagate") {
  PanelIntegrand f{[](double t) -> double {
                     if (t > 5.0) throw Error(ErrorCode::NonFinite, "boom");
                     return t;
                   },
                   {}};
  std::vector<double> nodes;
  for (int i = 0; i <= 100; ++i) nodes.push_back(0.1 * i);
  std::vector<PanelRule> rules(100);
  CHECK_THROWS_AS(integrate_panels_parallel(f, nodes, rules, 1e-10), Error);
}

TEST_CASE("prefix sums from an interior anchor") {
  const double parts[] = {1.0, 2.0, 3.0, 4.0};
  const auto h = accumulate_from(parts, 2);
  REQUIRE(h.size() == 5);
  CHECK(h[2] == 0.0);
  CHECK(h[3] == 3.0);
  CHECK(h[4] == 7.0);
  CHECK(h[1] == -2.0);
  CHECK(h[0] == -3.0);
  CHECK_THROWS_AS(accumulate_from(parts, 5), Error);
}

TEST_CASE("layered nodes") {
  const auto t = layered_nodes(0.0, 2.0, {true, true}, 101);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 2.0);
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
  // Square-root layer: the first step is much smaller than the uniform spacing.
  CHECK(t[1] - t[0] < 0.1 * (t[51] - t[50]));
  CHECK_THROWS_AS(layered_nodes(0.0, 1.0, {}, 1), Error);
  CHECK_THROWS_AS(layered_nodes(1.0, 1.0, {}, 10), Error);
}
