#pragma once

#include "skewkit/asymptotics.hpp"
#include "skewkit/quantiles.hpp"
#include "skewkit/skewness.hpp"

#include <cstddef>

namespace skewkit {

//! Wald interval estimate +- z_{1-alpha/2} se for one sample.
struct IntervalEstimate
{
  SkewMeasure measure;
  double estimate = 0.0;
  double se = 0.0;
  double level = 0.95;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t n = 0;

  //! Mean-skew form of an AUC interval: estimate and bounds halved.
  IntervalEstimate mean_skew() const;
};

//! Wald interval for estimate_a - estimate_b from independent samples.
struct DifferenceEstimate
{
  SkewMeasure measure;
  double estimate_a = 0.0;
  double estimate_b = 0.0;
  double variance_a = 0.0; // Var of estimate_a, i.e. asymptotic variance / n_a
  double variance_b = 0.0;
  double difference = 0.0;
  double se = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

//! Standard normal quantile; domain error outside (0,1).
double z_quantile(double alpha);

//! Interval from a grid that already carries quantile-density estimates.
//! AUC measures need a midpoint grid with the measure's J; pointwise
//! measures need m.p among the grid's lower probabilities.
IntervalEstimate interval(const QuantileGrid& grid, const SkewMeasure& m, double level = 0.95);

IntervalEstimate interval(const SortedSample& s,
                          const SkewMeasure& m,
                          double level = 0.95,
                          const BandwidthRule& rule = BandwidthRule::standard());

DifferenceEstimate difference_interval(const SortedSample& a,
                                       const SortedSample& b,
                                       const SkewMeasure& m,
                                       double level = 0.95,
                                       const BandwidthRule& rule = BandwidthRule::standard());

} // namespace skewkit
