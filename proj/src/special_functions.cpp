#include "skewkit/special_functions.hpp"

#include "skewkit/error.hpp"

#include <cmath>
#include <limits>

namespace skewkit::special {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double tiny = 1e-300;
constexpr int max_iter = 100000;

// Acklam's rational approximation, relative error ~1.2e-9, lower half.
double acklam_lower(double p)
{
  static constexpr double a[] = { -3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00 };
  static constexpr double b[] = { -5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01 };
  static constexpr double c[] = { -7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00 };
  static constexpr double d[] = { 7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00 };
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// exp(-x + a log x - lgamma(a)), the common prefactor of P and Q.
double gamma_prefactor(double a, double x)
{
  return std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_series(double a, double x)
{
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < max_iter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * eps)
      return sum * gamma_prefactor(a, x);
  }
  throw Error(ErrorCode::computation, "incomplete gamma series did not converge");
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_continued_fraction(double a, double x)
{
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny)
      d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny)
      c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps)
      return h * gamma_prefactor(a, x);
  }
  throw Error(ErrorCode::computation, "incomplete gamma continued fraction did not converge");
}

double beta_continued_fraction(double a, double b, double x)
{
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny)
    d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny)
      d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny)
      c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny)
      d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny)
      c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps)
      return h;
  }
  throw Error(ErrorCode::computation, "incomplete beta continued fraction did not converge");
}

} // namespace

double normal_cdf(double x)
{
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_sf(double x)
{
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double normal_pdf(double x)
{
  return std::exp(-0.5 * x * x) / sqrt_2pi;
}

double normal_quantile(double p)
{
  if (!(p > 0.0 && p < 1.0))
    throw Error(ErrorCode::domain, "normal quantile requires 0 < p < 1");
  if (p == 0.5)
    return 0.0;
  // Work in the lower half where Phi is accurate; 1 - p is exact for p >= 0.5.
  const bool upper = p > 0.5;
  const double pl = upper ? 1.0 - p : p;
  double z = acklam_lower(pl);
  for (int i = 0; i < 2; ++i) {
    const double e = normal_cdf(z) - pl;
    const double u = e * sqrt_2pi * std::exp(0.5 * z * z);
    z -= u / (1.0 + 0.5 * z * u);
  }
  return upper ? -z : z;
}

double gamma_p(double a, double x)
{
  if (!(a > 0.0) || x < 0.0 || std::isnan(x))
    throw Error(ErrorCode::domain, "gamma_p requires a > 0 and x >= 0");
  if (x == 0.0)
    return 0.0;
  if (std::isinf(x))
    return 1.0;
  if (x < a + 1.0)
    return gamma_series(a, x);
  return 1.0 - gamma_continued_fraction(a, x);
}

double gamma_q(double a, double x)
{
  if (!(a > 0.0) || x < 0.0 || std::isnan(x))
    throw Error(ErrorCode::domain, "gamma_q requires a > 0 and x >= 0");
  if (x == 0.0)
    return 1.0;
  if (std::isinf(x))
    return 0.0;
  if (x < a + 1.0)
    return 1.0 - gamma_series(a, x);
  return gamma_continued_fraction(a, x);
}

double log_beta(double a, double b)
{
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_inc(double a, double b, double x)
{
  if (!(a > 0.0 && b > 0.0) || !(x >= 0.0 && x <= 1.0))
    throw Error(ErrorCode::domain, "beta_inc requires a, b > 0 and 0 <= x <= 1");
  if (x == 0.0)
    return 0.0;
  if (x == 1.0)
    return 1.0;
  const double front =
    std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double invert_cdf(const std::function<double(double)>& cdf,
                  const std::function<double(double)>& pdf,
                  double p,
                  double lo,
                  double hi,
                  double guess,
                  double tol)
{
  if (std::isinf(hi)) {
    hi = std::max(2.0 * std::fabs(guess), 1.0) + lo;
    while (cdf(hi) < p) {
      lo = hi;
      hi *= 2.0;
      if (std::isinf(hi))
        throw Error(ErrorCode::computation, "cdf inversion could not bracket the root");
    }
  }
  double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  for (int i = 0; i < 400; ++i) {
    const double f = cdf(x) - p;
    if (std::fabs(f) <= tol)
      return x;
    if (f < 0.0)
      lo = x;
    else
      hi = x;
    if (hi - lo <= 4.0 * eps * std::fabs(x))
      return x;
    const double dens = pdf(x);
    double next = dens > 0.0 ? x - f / dens : lo - 1.0;
    if (!(next > lo && next < hi))
      next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

double integrate_tanh_sinh(const std::function<double(double)>& f,
                           double a,
                           double b,
                           double rel_tol)
{
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  constexpr double t_max = 4.0;

  // Weighted contribution of the abscissa pair at +-t.
  auto pair = [&](double t) {
    const double u = 0.5 * pi * std::sinh(t);
    const double e = std::exp(2.0 * u);
    const double gap = 2.0 * half / (e + 1.0); // distance to the endpoint
    const double ch = std::cosh(u);
    const double w = half * 0.5 * pi * std::cosh(t) / (ch * ch);
    double s = 0.0;
    if (a + gap > a)
      s += f(a + gap);
    if (b - gap < b)
      s += f(b - gap);
    return w * s;
  };

  double h = 1.0;
  double sum = half * 0.5 * pi * f(mid);
  for (double t = h; t <= t_max; t += h)
    sum += pair(t);
  double estimate = h * sum;
  for (int level = 0; level < 12; ++level) {
    h *= 0.5;
    for (double t = h; t <= t_max; t += 2.0 * h)
      sum += pair(t);
    const double next = h * sum;
    if (std::fabs(next - estimate) <= rel_tol * std::fabs(next) && level >= 3)
      return next;
    estimate = next;
  }
  return estimate;
}

} // namespace skewkit::special
