#pragma once

#include <functional>

namespace skewkit::special {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double sqrt_2pi = 2.506628274631000502415765284811045253;
inline constexpr double z_975 = 1.959963984540054;

//! Standard normal cdf.
double normal_cdf(double x);

//! Upper tail 1 - Phi(x), accurate for large x.
double normal_sf(double x);

double normal_pdf(double x);

//! Standard normal quantile with |Phi(z) - p| <= 1e-12 on (0,1).
double normal_quantile(double p);

//! Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

//! Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

//! Regularized incomplete beta I_x(a, b), a, b > 0, 0 <= x <= 1.
double beta_inc(double a, double b, double x);

//! log B(a, b).
double log_beta(double a, double b);

//! Root of the increasing function cdf(x) - p inside [lo, hi].
//! Safeguarded Newton using `pdf` as derivative, bisection fallback.
double invert_cdf(const std::function<double(double)>& cdf,
                  const std::function<double(double)>& pdf,
                  double p,
                  double lo,
                  double hi,
                  double guess,
                  double tol = 1e-13);

//! Integral of f over (a, b) by double-exponential (tanh-sinh) quadrature.
//! Tolerates integrable endpoint singularities.
double integrate_tanh_sinh(const std::function<double(double)>& f,
                           double a,
                           double b,
                           double rel_tol = 1e-12);

} // namespace skewkit::special
