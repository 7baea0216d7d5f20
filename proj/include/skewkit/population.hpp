#pragma once

#include "skewkit/distributions.hpp"
#include "skewkit/skewness.hpp"

namespace skewkit {

//! Population value of a measure. Pointwise and AUC kinds run the sample
//! estimators on exact quantiles (AUCs on the same J-point midpoint grid
//! the estimator uses); b3 uses the closed-form mean and the partial
//! integral of the quantile function.
double population_measure(const Distribution& d, const SkewMeasure& m);

//! (mu - x_{0.5}) / E|X - x_{0.5}|; throws when the mean is infinite.
double population_b3(const Distribution& d);

} // namespace skewkit
