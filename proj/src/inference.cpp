#include "skewkit/inference.hpp"

#include "skewkit/error.hpp"
#include "skewkit/special_functions.hpp"

#include <cmath>
#include <string>
#include <tuple>
#include <utility>

namespace skewkit {

namespace {

void check_level(double level)
{
  if (!(level > 0.0 && level < 1.0))
    throw Error(ErrorCode::domain, "confidence level must lie in (0,1), got " + std::to_string(level));
}

void check_has_se(const SkewMeasure& m)
{
  if (m.kind == MeasureKind::b3)
    throw Error(ErrorCode::unsupported, "b3 has no standard error; point estimate only");
}

QuantileGrid grid_for(const SortedSample& s, const SkewMeasure& m, const BandwidthRule& rule)
{
  if (m.is_auc())
    return QuantileGrid::build(s, m.J, rule);
  const double p[] = { m.p };
  return QuantileGrid::build_at(s, p, rule);
}

// Estimate and Var(estimate) from one sample.
std::pair<double, double> estimate_and_variance(const SortedSample& s,
                                                const SkewMeasure& m,
                                                const BandwidthRule& rule)
{
  const QuantileGrid grid = grid_for(s, m, rule);
  const double est = estimate(grid, m);
  const double v = asymptotic_variance(XiKernel::from_grid(grid), grid, m);
  return { est, v / static_cast<double>(s.size()) };
}

} // namespace

IntervalEstimate IntervalEstimate::mean_skew() const
{
  if (!measure.is_auc())
    throw Error(ErrorCode::invalid_argument, "mean skew is defined for AUC measures only");
  IntervalEstimate out = *this;
  out.estimate = skewkit::mean_skew(estimate);
  out.se = 0.5 * se;
  out.lower = skewkit::mean_skew(lower);
  out.upper = skewkit::mean_skew(upper);
  return out;
}

double z_quantile(double alpha)
{
  return special::normal_quantile(alpha);
}

IntervalEstimate interval(const QuantileGrid& grid, const SkewMeasure& m, double level)
{
  check_level(level);
  check_has_se(m);
  if (grid.n() == 0)
    throw Error(ErrorCode::contract, "interval needs a sample grid (n > 0)");
  IntervalEstimate out;
  out.measure = m;
  out.level = level;
  out.n = grid.n();
  out.estimate = estimate(grid, m);
  const double v = asymptotic_variance(XiKernel::from_grid(grid), grid, m);
  out.se = std::sqrt(v / static_cast<double>(grid.n()));
  const double z = z_quantile(0.5 + 0.5 * level);
  out.lower = out.estimate - z * out.se;
  out.upper = out.estimate + z * out.se;
  return out;
}

IntervalEstimate interval(const SortedSample& s,
                          const SkewMeasure& m,
                          double level,
                          const BandwidthRule& rule)
{
  check_level(level);
  check_has_se(m);
  return interval(grid_for(s, m, rule), m, level);
}

DifferenceEstimate difference_interval(const SortedSample& a,
                                       const SortedSample& b,
                                       const SkewMeasure& m,
                                       double level,
                                       const BandwidthRule& rule)
{
  check_level(level);
  check_has_se(m);
  DifferenceEstimate out;
  out.measure = m;
  out.level = level;
  out.n_a = a.size();
  out.n_b = b.size();
  try {
    std::tie(out.estimate_a, out.variance_a) = estimate_and_variance(a, m, rule);
  } catch (const Error& e) {
    throw e.with_context("sample A");
  }
  try {
    std::tie(out.estimate_b, out.variance_b) = estimate_and_variance(b, m, rule);
  } catch (const Error& e) {
    throw e.with_context("sample B");
  }
  out.difference = out.estimate_a - out.estimate_b;
  out.se = std::sqrt(out.variance_a + out.variance_b);
  const double z = z_quantile(0.5 + 0.5 * level);
  out.lower = out.difference - z * out.se;
  out.upper = out.difference + z * out.se;
  return out;
}

} // namespace skewkit
