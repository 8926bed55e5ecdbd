#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cmc {

using RealFn = std::function<double(double)>;

inline constexpr double kDefaultRootTol = 1e-12;
inline constexpr double kDefaultQuadTol = 1e-10;

// Sign-change bracket. f_lo_sign and f_hi_sign are -1, 0 or +1; a zero sign
// marks an endpoint where f vanished exactly (refine_root returns it).
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  int f_lo_sign = 0;
  int f_hi_sign = 0;
};

// Which ends of [a, b] carry an inverse-square-root singularity.
struct SingularSpec {
  bool left_singular = false;
  bool right_singular = false;
};

// Steps away from `start` in `direction` (+1 or -1), doubling the step each
// time, until f changes sign. Throws NoSignChange past max_span.
Bracket expand_bracket(const RealFn& f, double start, int direction, double max_span,
                       double initial_step = 1.0 / 64);

// TOMS 748 on the bracket; stops once the bracket is narrower than tol.
// tol = 0 runs to adjacent doubles.
double refine_root(const RealFn& f, const Bracket& b, double tol = kDefaultRootTol);

// Root refined to full precision, returned on the side where f has
// sign `feasible_sign`. Used for breakpoints where the integrand must be
// evaluated immediately next to the root.
double refine_root_feasible(const RealFn& f, const Bracket& b, int feasible_sign);

// Adaptive Gauss-Kronrod (7/15) quadrature with the error measured against the
// L1 norm of f, so panels whose integral nearly cancels still terminate.
double integrate_regular(const RealFn& f, double a, double b, double tol = kDefaultQuadTol);

// int_a^b f with flagged ends treated through t = a + s^2 / t = b - s^2.
double integrate_singular(const RealFn& f, double a, double b, SingularSpec spec,
                          double tol = kDefaultQuadTol);

// int_lo^hi f(t) dt through t = anchor + side * s^2, where `anchor` is a
// singular point outside or on the boundary of [lo, hi] and side = +1 when
// [lo, hi] lies right of it.
double integrate_near_singular(const RealFn& f, double anchor, int side, double lo, double hi,
                               double tol = kDefaultQuadTol);

// Finite-difference weights for the `order`-th derivative at x0 on arbitrary
// nodes (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

}  // namespace cmc
