#include "cmc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "cmc/error.hpp"

namespace cmc {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double checked(const RealFn& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw Error(ErrorCode::NonFinite, "integrand/function value at x=" + std::to_string(x));
  return v;
}

struct Panel {
  double value;
  double error;
  double l1;
};

Panel gk15(const RealFn& f, double a, double b) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  Panel p{};
  p.value = Rule::integrate([&](double x) { return checked(f, x); }, a, b, 0, 0.0, &p.error, &p.l1);
  return p;
}

// Global adaptive refinement: bisect the panel with the largest error until
// the summed error is within tol of the summed L1 norm. Judging against the
// whole integral (not each piece) keeps cost bounded near integrable kinks.
double adapt(const RealFn& f, double a, double b, const Panel& whole, double tol,
             int max_panels) {
  struct Piece {
    double a, b;
    Panel p;
    bool operator<(const Piece& o) const { return p.error < o.p.error; }
  };
  std::priority_queue<Piece> heap;
  heap.push({a, b, whole});
  double error = whole.error;
  double l1 = whole.l1;
  for (int k = 1; k < max_panels && error > tol * l1; ++k) {
    Piece top = heap.top();
    const double mid = 0.5 * (top.a + top.b);
    if (mid <= top.a || mid >= top.b) break;
    heap.pop();
    const Piece left{top.a, mid, gk15(f, top.a, mid)};
    const Piece right{mid, top.b, gk15(f, mid, top.b)};
    error += left.p.error + right.p.error - top.p.error;
    l1 += left.p.l1 + right.p.l1 - top.p.l1;
    heap.push(left);
    heap.push(right);
  }
  double total = 0.0;
  while (!heap.empty()) {
    total += heap.top().p.value;
    heap.pop();
  }
  return total;
}

// Distance from a to b measured in representable doubles.
bool adjacent(double a, double b) {
  return std::nextafter(a, b) == b || a == b;
}

}  // namespace

Bracket expand_bracket(const RealFn& f, double start, int direction, double max_span,
                       double initial_step) {
  if (max_span <= 0.0) throw Error(ErrorCode::InvalidArgument, "max_span must be positive");
  const int dir = direction >= 0 ? 1 : -1;
  double x_prev = start;
  double f_prev = f(start);
  if (!std::isfinite(f_prev)) throw Error(ErrorCode::NonFinite, "f(start) is not finite");
  if (f_prev == 0.0) return Bracket{start, start, 0, 0};

  const double limit = start + dir * max_span;
  double step = std::min(initial_step, max_span);
  while (true) {
    double x = x_prev + dir * step;
    if ((dir > 0 && x > limit) || (dir < 0 && x < limit)) x = limit;
    const double fx = f(x);
    if (!std::isfinite(fx)) throw Error(ErrorCode::NonFinite, "f not finite while bracketing");
    if (sign_of(fx) != sign_of(f_prev)) {
      Bracket b{x_prev, x, sign_of(f_prev), sign_of(fx)};
      if (b.lo > b.hi) {
        std::swap(b.lo, b.hi);
        std::swap(b.f_lo_sign, b.f_hi_sign);
      }
      return b;
    }
    if (x == limit) break;
    x_prev = x;
    f_prev = fx;
    step *= 2.0;
  }
  throw Error(ErrorCode::NoSignChange, "no sign change within span " + std::to_string(max_span));
}

double refine_root(const RealFn& f, const Bracket& b, double tol) {
  if (b.f_lo_sign == 0) return b.lo;
  if (b.f_hi_sign == 0) return b.hi;
  const double f_lo = f(b.lo);
  const double f_hi = f(b.hi);
  if (f_lo == 0.0) return b.lo;
  if (f_hi == 0.0) return b.hi;
  if (sign_of(f_lo) == sign_of(f_hi))
    throw Error(ErrorCode::NoSignChange, "bracket endpoints share a sign");

  std::uintmax_t max_iter = 300;
  auto done = [tol](double a, double c) { return std::abs(c - a) <= tol || adjacent(a, c); };
  const auto [lo, hi] =
      boost::math::tools::toms748_solve([&](double x) { return f(x); }, b.lo, b.hi, f_lo, f_hi,
                                        done, max_iter);
  return 0.5 * (lo + hi);
}

double refine_root_feasible(const RealFn& f, const Bracket& b, int feasible_sign) {
  if (b.f_lo_sign == 0) return b.lo;
  if (b.f_hi_sign == 0) return b.hi;
  const double f_lo = f(b.lo);
  const double f_hi = f(b.hi);
  if (sign_of(f_lo) == sign_of(f_hi))
    throw Error(ErrorCode::NoSignChange, "bracket endpoints share a sign");

  std::uintmax_t max_iter = 300;
  auto done = [](double a, double c) { return adjacent(a, c); };
  auto [lo, hi] = boost::math::tools::toms748_solve([&](double x) { return f(x); }, b.lo, b.hi,
                                                    f_lo, f_hi, done, max_iter);
  // TOMS 748 may stop on a narrow but not adjacent bracket; finish by bisection.
  double s_lo = sign_of(f(lo));
  for (int i = 0; i < 200 && !adjacent(lo, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const int s_mid = sign_of(f(mid));
    if (s_mid == 0) return mid;
    if (s_mid == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (sign_of(f(lo)) == feasible_sign) return lo;
  if (sign_of(f(hi)) == feasible_sign) return hi;
  return sign_of(f(lo)) == 0 ? lo : hi;
}

double integrate_regular(const RealFn& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_regular(f, b, a, tol);
  return adapt(f, a, b, gk15(f, a, b), tol, 2000);
}

double integrate_near_singular(const RealFn& f, double anchor, int side, double lo, double hi,
                               double tol) {
  if (lo == hi) return 0.0;
  if (side > 0) {
    const double s_lo = std::sqrt(std::max(0.0, lo - anchor));
    const double s_hi = std::sqrt(std::max(0.0, hi - anchor));
    return integrate_regular([&](double s) { return 2.0 * s * f(anchor + s * s); }, s_lo, s_hi,
                             tol);
  }
  const double s_lo = std::sqrt(std::max(0.0, anchor - hi));
  const double s_hi = std::sqrt(std::max(0.0, anchor - lo));
  return integrate_regular([&](double s) { return 2.0 * s * f(anchor - s * s); }, s_lo, s_hi, tol);
}

double integrate_singular(const RealFn& f, double a, double b, SingularSpec spec, double tol) {
  if (!(a < b)) throw Error(ErrorCode::InvalidArgument, "integrate_singular needs a < b");
  if (spec.left_singular && spec.right_singular) {
    const double mid = 0.5 * (a + b);
    return integrate_near_singular(f, a, +1, a, mid, tol) +
           integrate_near_singular(f, b, -1, mid, b, tol);
  }
  if (spec.left_singular) return integrate_near_singular(f, a, +1, a, b, tol);
  if (spec.right_singular) return integrate_near_singular(f, b, -1, a, b, tol);
  return integrate_regular(f, a, b, tol);
}

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
  const int n = static_cast<int>(nodes.size());
  if (order < 0 || n <= order)
    throw Error(ErrorCode::InsufficientSamples, "stencil too small for derivative order");
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

}  // namespace cmc
