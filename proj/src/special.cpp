#include "stylo/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stylo/error.hpp"

namespace stylo::special {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction part of I_x(a,b) (modified Lentz).
double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge (a=" + std::to_string(a) +
                       ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

// log of x^a (1-x)^b / B(a,b)
double log_front_factor(double x, double a, double b) {
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
}

}  // namespace

double incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw NumericalError("incomplete beta requires finite a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw NumericalError("incomplete beta requires x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x < (a + 1.0) / (a + b + 2.0))
    return std::exp(log_front_factor(x, a, b)) * beta_continued_fraction(x, a, b) / a;
  return 1.0 - std::exp(log_front_factor(1.0 - x, b, a)) * beta_continued_fraction(1.0 - x, b, a) / b;
}

double f_survival(double f, double d1, double d2) {
  if (std::isnan(f)) throw NumericalError("F statistic is NaN");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  // P(F > f) = I_{d2/(d2 + d1 f)}(d2/2, d1/2)
  return incomplete_beta(d2 / (d2 + d1 * f), d2 / 2.0, d1 / 2.0);
}

double f_cdf(double f, double d1, double d2) {
  if (std::isnan(f)) throw NumericalError("F statistic is NaN");
  if (f <= 0.0) return 0.0;
  if (std::isinf(f)) return 1.0;
  return incomplete_beta(d1 * f / (d1 * f + d2), d1 / 2.0, d2 / 2.0);
}

}  // namespace stylo::special
