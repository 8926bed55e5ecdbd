#include "cmc/hypfun.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace cmc {

namespace {

constexpr double kSeriesCutoff = 1.0;
constexpr double kLogCutoff = 20.0;

double int_pow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double moment_by_quadrature(MomentKind kind, int m, double t) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  if (kind == MomentKind::SinhMoment)
    return Rule::integrate([m](double r) { return int_pow(std::sinh(r), m); }, 0.0, t);
  return Rule::integrate([m](double r) { return int_pow(std::cosh(r), m); }, 0.0, t);
}

double sinh_moment_recurrence(int m, double t) {
  const double s = std::sinh(t);
  const double c = std::cosh(t);
  double prev = (m % 2 == 0) ? t : 2.0 * std::sinh(0.5 * t) * std::sinh(0.5 * t);
  double spow = (m % 2 == 0) ? s : s * s;  // sinh^{k-1} for the first k below
  for (int k = (m % 2 == 0) ? 2 : 3; k <= m; k += 2) {
    prev = (spow * c - (k - 1) * prev) / k;
    spow *= s * s;
  }
  return prev;
}

double cosh_moment_recurrence(int m, double t) {
  const double s = std::sinh(t);
  const double c = std::cosh(t);
  double prev = (m % 2 == 0) ? t : s;
  double cpow = (m % 2 == 0) ? c : c * c;  // cosh^{k-1}
  for (int k = (m % 2 == 0) ? 2 : 3; k <= m; k += 2) {
    prev = (s * cpow + (k - 1) * prev) / k;
    cpow *= c * c;
  }
  return prev;
}

}  // namespace

double sinh_pow(double t, int k) { return int_pow(std::sinh(t), k); }
double cosh_pow(double t, int k) { return int_pow(std::cosh(t), k); }

double log_sinh(double t) {
  if (t < kLogCutoff) return std::log(std::sinh(t));
  return t - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * t));
}

double log_cosh(double t) {
  if (t < kLogCutoff) return std::log(std::cosh(t));
  return t - std::numbers::ln2 + std::log1p(std::exp(-2.0 * t));
}

double eval_moment(MomentKind kind, int m, double t) {
  if (t == 0.0) return 0.0;
  if (m == 0) return t;
  if (t < kSeriesCutoff) return moment_by_quadrature(kind, m, t);
  return kind == MomentKind::SinhMoment ? sinh_moment_recurrence(m, t)
                                        : cosh_moment_recurrence(m, t);
}

double log_moment(MomentKind kind, int m, double t) {
  if (m == 0) return std::log(t);
  if (t < kLogCutoff) return std::log(eval_moment(kind, m, t));

  // Ratio of the moment to its leading term, r_m = m X_m / (leading product),
  // follows the same two-step recurrence and stays O(1).
  if (kind == MomentKind::SinhMoment) {
    const double inv_s2 = std::exp(-2.0 * log_sinh(t));
    double r = (m % 2 == 0) ? 1.0 - t * std::exp(-log_sinh(t) - log_cosh(t))
                            : 1.0 - std::exp(-log_cosh(t));
    for (int k = (m % 2 == 0) ? 4 : 3; k <= m; k += 2)
      r = 1.0 - static_cast<double>(k - 1) / (k - 2) * r * inv_s2;
    return (m - 1) * log_sinh(t) + log_cosh(t) - std::log(static_cast<double>(m)) + std::log(r);
  }
  const double inv_c2 = std::exp(-2.0 * log_cosh(t));
  double r = (m % 2 == 0) ? 1.0 + t * std::exp(-log_sinh(t) - log_cosh(t)) : 1.0;
  for (int k = (m % 2 == 0) ? 4 : 3; k <= m; k += 2)
    r = 1.0 + static_cast<double>(k - 1) / (k - 2) * r * inv_c2;
  return log_sinh(t) + (m - 1) * log_cosh(t) - std::log(static_cast<double>(m)) + std::log(r);
}

double moment_leading_term(MomentKind kind, int m, double t) {
  const double s = std::sinh(t);
  const double c = std::cosh(t);
  const double q = static_cast<double>(m - 1) / (m - 2);
  if (kind == MomentKind::SinhMoment)
    return int_pow(s, m - 3) * c * (s * s - q) / m;
  return (s * int_pow(c, m - 1) + q * s * int_pow(c, m - 3)) / m;
}

}  // namespace cmc
