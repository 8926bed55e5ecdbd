#include <doctest.h>

#include <cmath>

#include "cmc/error.hpp"
#include "cmc/hypfun.hpp"
#include "cmc/translation.hpp"

using namespace cmc;

namespace {

double bisect(auto f, double lo, double hi) {
  const bool lo_neg = f(lo) < 0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0) == lo_neg) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoFailure;
}

constexpr double kTwoThirds = 2.0 / 3.0;

}  // namespace

TEST_CASE("R and S in closed form for n = 3 at the critical value") {
  // nH = 2: R = (1 + e^{-2t})/2 - t - d, S = cosh^2 + (sinh cosh + t) + d.
  for (double d : {0.0, 0.4, -1.5}) {
    const SurfaceParams p{3, kTwoThirds, d};
    for (double t = 0.0; t < 6.0; t += 0.29) {
      CHECK(eval_tprofile(p, TProfileFn::R, t) ==
            doctest::Approx(0.5 * (1 + std::exp(-2 * t)) - t - d).epsilon(1e-12));
      const double s = std::sinh(t), c = std::cosh(t);
      CHECK(eval_tprofile(p, TProfileFn::S, t) == doctest::Approx(c * c + s * c + t + d).epsilon(1e-12));
    }
  }
}

TEST_CASE("values at the origin") {
  for (double d : {-0.5, 0.0, 0.5}) {
    const SurfaceParams p{3, kTwoThirds, d};
    CHECK(eval_tprofile(p, TProfileFn::R, 0.0) == doctest::Approx(1.0 - d));
    CHECK(eval_tprofile(p, TProfileFn::S, 0.0) == doctest::Approx(1.0 + d));
    CHECK(eval_tprofile(p, TProfileFn::T, 0.0) == doctest::Approx(d / std::sqrt(1 - d * d)).epsilon(1e-14));
  }
  CHECK(code_of([] { eval_tprofile({3, kTwoThirds, 0.0}, TProfileFn::R, -0.1); }) ==
        ErrorCode::OutsideDomain);
}

TEST_CASE("subcritical constants") {
  CHECK(subcritical_tH(2, 0.25) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
  CHECK(subcritical_tH(3, 1.0 / 3.0) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
  for (int n = 2; n <= 5; ++n) {
    const double H = 0.4 * critical_H(n);
    CHECK(std::tanh(subcritical_tH(n, H)) == doctest::Approx(n * H / (n - 1)).epsilon(1e-14));
  }
  CHECK(code_of([] { subcritical_tH(3, kTwoThirds); }) == ErrorCode::RegimeMismatch);
  CHECK(code_of([] { subcritical_tH(3, 0.9); }) == ErrorCode::RegimeMismatch);

  CHECK(graph_constant_dH(2, 0.25) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
  CHECK(graph_constant_dH(3, 1.0 / 3.0) ==
        doctest::Approx(4.0 / 3.0 - (1.0 / 3.0 + 0.25 * std::log(3.0))).epsilon(1e-14));
  CHECK(graph_constant_dH(3, 1.0 / 3.0) == doctest::Approx(0.72530).epsilon(1e-4));

  // d_H makes t_H a double zero of R.
  for (int n = 2; n <= 4; ++n) {
    const double H = 0.5 * critical_H(n);
    const SurfaceParams p{n, H, graph_constant_dH(n, H)};
    const double th = subcritical_tH(n, H);
    CHECK(std::abs(eval_tprofile(p, TProfileFn::R, th)) < 1e-12);
    CHECK(eval_tprofile(p, TProfileFn::R, th + 0.5) > 0.0);
    CHECK(eval_tprofile(p, TProfileFn::R, th - 0.3) > 0.0);
  }
}

TEST_CASE("classification table") {
  CHECK(classify_translation({3, kTwoThirds, 0.0}).tag == TranslationClass::EmbeddedConvex_T0);
  CHECK(classify_translation({3, kTwoThirds, 0.5}).tag == TranslationClass::EmbeddedNonsmooth);
  CHECK(classify_translation({3, kTwoThirds, -1.0}).tag == TranslationClass::Immersed_Tm1);
  CHECK(classify_translation({3, kTwoThirds, -2.0}).tag == TranslationClass::ImmersedSelfInt);
  CHECK(classify_translation({3, kTwoThirds, -0.5}).tag == TranslationClass::ImmersedSelfInt);
  CHECK(classify_translation({3, kTwoThirds, 1.5}).tag == TranslationClass::NoSolution);
  CHECK(classify_translation({3, 1.0 / 3.0, graph_constant_dH(3, 1.0 / 3.0)}).tag ==
        TranslationClass::CompleteGraph_T2);
  CHECK(classify_translation({2, 0.5, 0.0}).tag == TranslationClass::Unclassified);
  CHECK(classify_translation({3, 0.3, 0.2}).tag == TranslationClass::Unclassified);
}

TEST_CASE("breakpoints against bisection oracles") {
  auto R0 = [](double t) { return 0.5 * (1 + std::exp(-2 * t)) - t; };
  const auto t0 = classify_translation({3, kTwoThirds, 0.0});
  CHECK(*t0.breakpoints.c == doctest::Approx(bisect(R0, 0.0, 2.0)).epsilon(1e-12));
  CHECK(*t0.breakpoints.c == doctest::Approx(0.6392322713805368).epsilon(1e-12));
  CHECK(*t0.breakpoints.left_end == 0.0);
  CHECK_FALSE(t0.breakpoints.alpha.has_value());

  const auto si = classify_translation({3, kTwoThirds, -2.0});
  auto S = [](double t) { return std::cosh(t) * std::cosh(t) + std::sinh(t) * std::cosh(t) + t - 2.0; };
  auto R = [](double t) { return 0.5 * (1 + std::exp(-2 * t)) - t + 2.0; };
  REQUIRE(si.breakpoints.alpha.has_value());
  CHECK(*si.breakpoints.alpha == doctest::Approx(bisect(S, 0.0, 2.0)).epsilon(1e-12));
  CHECK(*si.breakpoints.c == doctest::Approx(bisect(R, 0.0, 5.0)).epsilon(1e-12));
  CHECK(*si.breakpoints.alpha < *si.breakpoints.c);

  const auto tm1 = classify_translation({3, kTwoThirds, -1.0});
  CHECK(tm1.breakpoints.left_zero == TEndZero::S);
  CHECK(*tm1.breakpoints.left_end == 0.0);
}

TEST_CASE("convex arc for d = 0") {
  const SurfaceParams p{3, kTwoThirds, 0.0};
  const auto curve = sample_mu(p, classify_translation(p).breakpoints);
  const auto& s = curve.samples;
  CHECK(s.front().slope == 0.0);
  CHECK(s.front().height == 0.0);
  CHECK(curve.right_behavior == EndBehavior::VerticalTangent);
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double m0 = (s[i].height - s[i - 1].height) / (s[i].rho - s[i - 1].rho);
    const double m1 = (s[i + 1].height - s[i].height) / (s[i + 1].rho - s[i].rho);
    CHECK(m1 > m0);
  }
}

TEST_CASE("slope at the origin is d / sqrt(1 - d^2)") {
  for (double d : {-0.5, 0.5}) {
    const SurfaceParams p{3, kTwoThirds, d};
    const auto curve = sample_mu(p, classify_translation(p).breakpoints);
    CHECK(curve.samples.front().slope == doctest::Approx(d / std::sqrt(1 - d * d)).epsilon(1e-14));
  }
  const SurfaceParams m1{3, kTwoThirds, -1.0};
  const auto c = sample_mu(m1, classify_translation(m1).breakpoints);
  CHECK(c.left_behavior == EndBehavior::VerticalTangent);
  CHECK(c.samples.front().slope == -INFINITY);
}

TEST_CASE("self-intersecting arc turns around") {
  const SurfaceParams p{3, kTwoThirds, -2.0};
  const auto bp = classify_translation(p).breakpoints;
  const auto curve = sample_mu(p, bp);
  const auto& s = curve.samples;
  CHECK(s[1].slope < 0.0);
  CHECK(s[s.size() - 2].slope > 0.0);
  CHECK(s.front().rho == doctest::Approx(*bp.alpha));
  CHECK(s.back().rho == doctest::Approx(*bp.c));
}

TEST_CASE("complete graph over (t_H, inf)") {
  const double H = 1.0 / 3.0;
  const double th = subcritical_tH(3, H);
  const auto g = build_complete_graph(3, H, 50.0);
  const auto& s = g.samples;
  CHECK(s.front().rho == doctest::Approx(th + 1e-6).epsilon(1e-12));
  CHECK(s.back().rho == 50.0);
  bool found = false;
  for (const auto& x : s) {
    if (std::abs(x.rho - (th + 1e-4)) < 1e-12) {
      found = true;
      CHECK(x.height < -5.0);
    }
  }
  CHECK(found);
  double max_slope = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    CHECK(s[i].height > s[i - 1].height);
    if (s[i].rho >= th + 1.0) max_slope = std::max(max_slope, std::abs(s[i].slope));
  }
  CHECK(max_slope < 10.0);
  CHECK(code_of([] { build_complete_graph(3, kTwoThirds, 50.0); }) == ErrorCode::RegimeMismatch);
  CHECK(code_of([&] { build_complete_graph(3, H, th + 0.5); }) == ErrorCode::InsufficientRange);
  SampleGrid tiny;
  tiny.samples = 10;
  CHECK(code_of([&] { build_complete_graph(3, H, 50.0, tiny); }) == ErrorCode::InsufficientSamples);
}

TEST_CASE("principal curvatures sum to nH") {
  for (double d : {0.0, 0.5, -0.5, -2.0}) {
    const SurfaceParams p{3, kTwoThirds, d};
    const auto curve = sample_mu(p, classify_translation(p).breakpoints);
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
      if (!std::isfinite(curve.samples[i].slope)) {
        CHECK(code_of([&] { principal_curvatures(curve, i); }) == ErrorCode::VerticalPoint);
        continue;
      }
      const auto k = principal_curvatures(curve, i);
      CHECK(std::abs(k.k_V + 2 * k.k_P - 3 * p.H) < 1e-8);
    }
  }
  const SurfaceParams p{3, kTwoThirds, 0.0};
  const auto curve = sample_mu(p, classify_translation(p).breakpoints);
  const auto k0 = principal_curvatures(curve, 0);
  CHECK(k0.k_P == 0.0);
  CHECK(k0.k_V == doctest::Approx(2.0));
  CHECK(code_of([&] { principal_curvatures(curve, curve.samples.size()); }) == ErrorCode::OutOfRange);
}

TEST_CASE("profile properties") {
  for (int n = 2; n <= 5; ++n) {
    for (double kappa : {0.5, 1.0, 1.5}) {
      const double H = kappa * critical_H(n);
      for (double d : {-0.5, 0.0, 0.5}) {
        const SurfaceParams p{n, H, d};
        double prev_s = -1e300;
        for (double t = 0.0; t < 5.0; t += 0.1) {
          // S is increasing, and T has the sign of the flux term.
          const double s = eval_tprofile(p, TProfileFn::S, t);
          CHECK(s > prev_s);
          prev_s = s;
          const double r = eval_tprofile(p, TProfileFn::R, t);
          if (r > 0.0 && s > 0.0) {
            const double g = n * H * eval_moment(MomentKind::CoshMoment, n - 1, t) + d;
            const double T = eval_tprofile(p, TProfileFn::T, t);
            CHECK((T > 0) == (g > 0));
            CHECK((T < 0) == (g < 0));
          }
        }
      }
    }
  }
}

TEST_CASE("subcritical R grows like (1 - kappa) cosh^{n-2} e^t / 2") {
  for (int n = 2; n <= 5; ++n) {
    const double kappa = 0.5;
    const SurfaceParams p{n, kappa * critical_H(n), 0.3};
    const double t = 30.0;
    const double lead = 0.5 * (1 - kappa) * cosh_pow(t, n - 2) * std::exp(t);
    CHECK(eval_tprofile(p, TProfileFn::R, t) / lead == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("critical R decreases for n >= 3 and tends to -d for n = 2") {
  for (int n = 3; n <= 5; ++n) {
    const SurfaceParams p{n, critical_H(n), 0.2};
    double prev = 1e300;
    for (double t = 0.0; t < 8.0; t += 0.25) {
      const double r = eval_tprofile(p, TProfileFn::R, t);
      CHECK(r < prev);
      prev = r;
    }
  }
  const SurfaceParams p2{2, 0.5, 0.3};
  CHECK(eval_tprofile(p2, TProfileFn::R, 30.0) == doctest::Approx(-0.3).epsilon(1e-9));
}
