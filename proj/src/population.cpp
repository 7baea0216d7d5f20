#include "skewkit/population.hpp"

#include "skewkit/error.hpp"
#include "skewkit/special_functions.hpp"

#include <cmath>

namespace skewkit {

double population_b3(const Distribution& d)
{
  const double mu = d.mean();
  if (!std::isfinite(mu))
    throw Error(ErrorCode::invalid_argument, "b3 needs a finite mean; " + d.name() + " has none");
  const double median = d.quantile(0.5);
  // E|X - m| = mu - 2 * int_0^{1/2} Q(u) du
  const double lower_half = special::integrate_tanh_sinh(
    [&d](double u) { return d.quantile(u); }, 0.0, 0.5);
  const double mad = mu - 2.0 * lower_half;
  if (!(mad > 0.0))
    throw Error(ErrorCode::computation, "b3: non-positive mean absolute deviation");
  return (mu - median) / mad;
}

double population_measure(const Distribution& d, const SkewMeasure& m)
{
  if (m.kind == MeasureKind::b3)
    return population_b3(d);
  if (m.is_auc())
    return estimate_auc(QuantileGrid::population(d, m.J), m);
  const double p[] = { m.p };
  return estimate_pointwise(QuantileGrid::population_at(d, p), m);
}

} // namespace skewkit
