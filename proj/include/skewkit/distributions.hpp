#pragma once

#include "skewkit/rng.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace skewkit {

// Parametric families. Single-parameter families use unit scale; all
// skewness measures are scale-free so the scale does not matter.
namespace family {
struct Normal { double mu, sigma; };
struct LogNormal { double mu, sigma; };
struct Exponential { double rate; };
struct ChiSquare { double df; };
//! F(x) = 1 - (1 + x/scale)^(-shape), x >= 0.
struct ParetoII { double scale, shape; };
struct Weibull { double shape; };
struct Gamma { double shape; };
struct Beta { double a, b; };
struct FisherF { double d1, d2; };
} // namespace family

using Family = std::variant<family::Normal,
                            family::LogNormal,
                            family::Exponential,
                            family::ChiSquare,
                            family::ParetoII,
                            family::Weibull,
                            family::Gamma,
                            family::Beta,
                            family::FisherF>;

//! Immutable distribution with closed-form or numerically inverted quantile
//! function. Construction validates parameters.
class Distribution
{
public:
  static Distribution normal(double mu, double sigma);
  static Distribution lognormal(double mu, double sigma);
  static Distribution exponential(double rate);
  static Distribution chi_square(double df);
  static Distribution pareto2(double scale, double shape);
  static Distribution weibull(double shape);
  static Distribution gamma(double shape);
  static Distribution beta(double a, double b);
  static Distribution fisher_f(double d1, double d2);

  //! Parses "lognormal(0,1)", "exp(1)", "chisq(5)", "pareto2(1,7)",
  //! "weibull(2)", "gamma(5)", "beta(2,5)", "f(2,8)", "normal(2,1)".
  //! Case-insensitive; whitespace ignored.
  static Distribution parse(std::string_view text);

  const Family& family() const { return family_; }

  //! Canonical string, parseable by parse().
  std::string name() const;

  double cdf(double x) const;
  //! Zero outside the support.
  double density(double x) const;
  //! x_p for 0 < p < 1; throws ErrorCode::domain otherwise.
  double quantile(double p) const;
  //! g(p) = 1 / f(x_p).
  double quantile_density(double p) const;

  //! Population mean; +inf when it does not exist.
  double mean() const;

  //! True when the distribution is symmetric about its median.
  bool symmetric() const;

private:
  explicit Distribution(Family f)
    : family_(f)
  {}

  Family family_;
};

// Free-function spellings used throughout the library.
inline double quantile(const Distribution& d, double p) { return d.quantile(p); }
inline double density(const Distribution& d, double x) { return d.density(x); }
inline double quantile_density(const Distribution& d, double p)
{
  return d.quantile_density(p);
}

//! n i.i.d. draws by inversion, x = quantile(u) with u ~ Uniform(0,1).
std::vector<double> sample(const Distribution& d, std::size_t n, Philox4x32& stream);

} // namespace skewkit
