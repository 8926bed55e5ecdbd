#pragma once

// Hyperbolic moment integrals
//
//   I_m(t) = int_0^t sinh^m(r) dr      (SinhMoment)
//   J_m(t) = int_0^t cosh^m(r) dr      (CoshMoment)
//
// evaluated through the two-step recurrences
//
//   m I_m = sinh^{m-1} cosh - (m-1) I_{m-2},   I_0 = t, I_1 = cosh t - 1
//   m J_m = sinh cosh^{m-1} + (m-1) J_{m-2},   J_0 = t, J_1 = sinh t
//
// For t < 1 the sinh recurrence subtracts nearly equal terms, so there a
// fixed Gauss-Legendre rule is used instead (sinh^m is entire and the rule is
// exact to rounding on that range).

namespace cmc {

enum class MomentKind { SinhMoment, CoshMoment };

double eval_moment(MomentKind kind, int m, double t);

// Natural log of the moment. Valid for any t > 0, including t where sinh/cosh
// overflow (t > ~710); used by the asymptotic checks.
double log_moment(MomentKind kind, int m, double t);

// Two-term large-t expansion for m >= 4:
//   m I_m ~ sinh^{m-3} cosh (sinh^2 - (m-1)/(m-2))
//   m J_m ~ sinh cosh^{m-1} + (m-1)/(m-2) sinh cosh^{m-3}
double moment_leading_term(MomentKind kind, int m, double t);

// sinh^k and cosh^k for integer k >= 0 (k = 0 returns 1).
double sinh_pow(double t, int k);
double cosh_pow(double t, int k);

// log(sinh t), log(cosh t) without overflow.
double log_sinh(double t);
double log_cosh(double t);

}  // namespace cmc
