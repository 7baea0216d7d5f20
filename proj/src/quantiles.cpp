#include "skewkit/quantiles.hpp"

#include "skewkit/error.hpp"
#include "skewkit/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace skewkit {

namespace {

void check_probability(double p)
{
  if (!(p > 0.0 && p < 1.0))
    throw Error(ErrorCode::domain,
                "probability must lie strictly inside (0,1), got " + std::to_string(p));
}

void check_values(const std::vector<double>& v)
{
  if (v.size() < SortedSample::min_size)
    throw Error(ErrorCode::invalid_argument,
                "sample needs at least " + std::to_string(SortedSample::min_size) +
                  " observations, got " + std::to_string(v.size()));
  for (double x : v)
    if (!std::isfinite(x))
      throw Error(ErrorCode::invalid_argument, "sample contains a non-finite value");
}

} // namespace

SortedSample::SortedSample(std::vector<double> values)
  : values_(std::move(values))
{
  check_values(values_);
  std::sort(values_.begin(), values_.end());
}

SortedSample::SortedSample(std::vector<double> values, presorted_tag)
  : values_(std::move(values))
{}

SortedSample SortedSample::from_sorted(std::vector<double> values)
{
  check_values(values);
  if (!std::is_sorted(values.begin(), values.end()))
    throw Error(ErrorCode::invalid_argument, "from_sorted: values are not ascending");
  return SortedSample(std::move(values), presorted_tag{});
}

double SortedSample::mean() const
{
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

double quantile_type8(const SortedSample& s, double p)
{
  check_probability(p);
  const auto n = static_cast<double>(s.size());
  const double h = std::clamp((n + 1.0 / 3.0) * p + 1.0 / 3.0, 1.0, n);
  const double lo = std::floor(h);
  const auto i = static_cast<std::size_t>(lo);
  if (i >= s.size())
    return s.order_stat(s.size());
  const double x = s.order_stat(i);
  return x + (h - lo) * (s.order_stat(i + 1) - x);
}

BandwidthRule BandwidthRule::fixed_width(double b)
{
  if (!(b > 0.0 && b < 0.5))
    throw Error(ErrorCode::invalid_argument, "fixed bandwidth must satisfy 0 < b < 0.5");
  return { Kind::fixed, b };
}

double default_bandwidth(std::size_t n, double p)
{
  check_probability(p);
  if (n < SortedSample::min_size)
    throw Error(ErrorCode::invalid_argument, "default_bandwidth needs n >= 4");
  const auto nn = static_cast<double>(n);
  double b = special::z_975 * std::sqrt(p * (1.0 - p) / nn);
  b = std::min(b, std::min(p, 1.0 - p));
  return std::max(b, 1.0 / nn);
}

double bandwidth(const BandwidthRule& rule, std::size_t n, double p)
{
  if (rule.kind == BandwidthRule::Kind::fixed) {
    check_probability(p);
    return std::max(std::min(rule.value, std::min(p, 1.0 - p)),
                    1.0 / static_cast<double>(n));
  }
  return default_bandwidth(n, p);
}

double quantile_density_estimate(const SortedSample& s, double p, const BandwidthRule& rule)
{
  const std::size_t n = s.size();
  const double b = bandwidth(rule, n, p);
  const auto nn = static_cast<double>(n);

  // Only spacings with |i/n - p| < b carry kernel weight.
  const auto first = static_cast<std::size_t>(std::max(1.0, std::floor(nn * (p - b))));
  const auto last = static_cast<std::size_t>(
    std::min(nn - 1.0, std::ceil(nn * (p + b))));
  const auto x = s.values();
  double sum = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    const double u = (static_cast<double>(i) / nn - p) / b;
    if (u <= -1.0 || u >= 1.0)
      continue;
    sum += (x[i] - x[i - 1]) * (1.0 - u * u);
  }
  const double g = 0.75 * sum / b;
  if (!(g > 0.0)) {
    std::ostringstream msg;
    msg << "quantile density estimate is not positive at p=" << p << " (bandwidth " << b
        << "); too many tied values to form a standard error";
    throw Error(ErrorCode::quantile_density, msg.str());
  }
  return g;
}

} // namespace skewkit
