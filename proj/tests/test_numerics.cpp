#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cmc/error.hpp"
#include "cmc/numerics.hpp"
#include "cmc/rotation.hpp"

using namespace cmc;

TEST_CASE("bracket expansion finds a sign change") {
  auto f = [](double x) { return x * x - 2.0; };
  const Bracket b = expand_bracket(f, 0.0, +1, 10.0);
  CHECK(b.lo < std::sqrt(2.0));
  CHECK(b.hi > std::sqrt(2.0));
  CHECK(b.f_lo_sign == -1);
  CHECK(b.f_hi_sign == 1);
  CHECK(refine_root(f, b) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const Bracket left = expand_bracket(f, 0.0, -1, 10.0);
  CHECK(refine_root(f, left) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("bracket expansion reports missing roots") {
  auto f = [](double x) { return 1.0 + x * x; };
  try {
    expand_bracket(f, 0.0, +1, 5.0);
    FAIL("expected NoSignChange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSignChange);
  }
  CHECK_THROWS_AS(expand_bracket(f, 0.0, +1, 0.0), Error);
}

TEST_CASE("exact zero at the start is a degenerate bracket") {
  auto f = [](double x) { return x - 1.0; };
  const Bracket b = expand_bracket(f, 1.0, +1, 3.0);
  CHECK(b.f_lo_sign == 0);
  CHECK(refine_root(f, b) == 1.0);
}

TEST_CASE("root refinement against bisection") {
  // Oracle: plain bisection to adjacent doubles.
  auto f = [](double x) { return std::cos(x) - x; };
  double lo = 0.0, hi = 1.0;
  while (std::nextafter(lo, hi) < hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0 ? lo : hi) = mid;
  }
  const Bracket b{0.0, 1.0, 1, -1};
  CHECK(refine_root(f, b, 0.0) == doctest::Approx(lo).epsilon(1e-15));
  const double feas = refine_root_feasible(f, b, +1);
  CHECK(f(feas) >= 0.0);
  CHECK(std::abs(feas - lo) <= 2 * std::abs(std::nextafter(lo, 2.0) - lo));
  CHECK_THROWS_AS(refine_root(f, Bracket{0.0, 0.5, 1, 1}), Error);
}

TEST_CASE("regular quadrature") {
  CHECK(integrate_regular([](double x) { return std::exp(x); }, 0.0, 2.0) ==
        doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-12));
  CHECK(integrate_regular([](double x) { return std::sin(x); }, 0.0, 2 * std::numbers::pi) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(integrate_regular([](double x) { return x; }, 1.0, 0.0) == doctest::Approx(-0.5));
}

TEST_CASE("inverse square root ends") {
  CHECK(integrate_singular([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, {true, false}) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(integrate_singular([](double t) { return 1.0 / std::sqrt(1.0 - t); }, 0.0, 1.0,
                           {false, true}) == doctest::Approx(2.0).epsilon(1e-10));
  // int_0^1 dt / sqrt(t (1 - t)) = pi
  CHECK(integrate_singular([](double t) { return 1.0 / std::sqrt(t * (1.0 - t)); }, 0.0, 1.0,
                           {true, true}) == doctest::Approx(std::numbers::pi).epsilon(1e-10));
  CHECK_THROWS_AS(integrate_singular([](double) { return 1.0; }, 1.0, 1.0, {}), Error);
}

TEST_CASE("profile integral with a singular end against a midpoint oracle") {
  // Sphere n = 2, H = 1: Q is singular at ln 3.
  const SurfaceParams p{2, 1.0, 0.0};
  const double b = std::log(3.0);
  auto q = [&](double t) { return eval_profile(p, ProfileFn::Q, t); };
  const double got = integrate_singular(q, 0.0, b, {false, true});
  // Midpoint rule in s = sqrt(b - t) on the integrand 2 s Q(b - s^2).
  const int N = 200000;
  const double smax = std::sqrt(b);
  const double h = smax / N;
  double ref = 0.0;
  for (int i = 0; i < N; ++i) {
    const double s = (i + 0.5) * h;
    ref += 2.0 * s * q(b - s * s) * h;
  }
  CHECK(got == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("quadrature is additive") {
  auto f = [](double t) { return std::cosh(t) / std::sqrt(t); };
  const double whole = integrate_singular(f, 0.0, 2.0, {true, false});
  const double a = integrate_singular(f, 0.0, 0.7, {true, false});
  const double c = integrate_regular(f, 0.7, 2.0);
  CHECK(whole == doctest::Approx(a + c).epsilon(1e-10));
}

TEST_CASE("finite-difference weights") {
  const double nodes3[] = {-1.0, 0.0, 1.0};
  auto w = fd_weights(0.0, nodes3, 1);
  CHECK(w[0] == doctest::Approx(-0.5));
  CHECK(w[1] == doctest::Approx(0.0));
  CHECK(w[2] == doctest::Approx(0.5));
  auto w2 = fd_weights(0.0, nodes3, 2);
  CHECK(w2[0] == doctest::Approx(1.0));
  CHECK(w2[1] == doctest::Approx(-2.0));
  // Five uneven nodes differentiate a quartic exactly.
  const double nodes5[] = {0.0, 0.1, 0.35, 0.5, 0.9};
  auto w5 = fd_weights(0.3, nodes5, 1);
  double d = 0.0;
  for (int i = 0; i < 5; ++i) d += w5[i] * std::pow(nodes5[i], 4);
  CHECK(d == doctest::Approx(4 * std::pow(0.3, 3)).epsilon(1e-12));
  CHECK_THROWS_AS(fd_weights(0.0, std::span<const double>(nodes3, 1), 1), Error);
}
