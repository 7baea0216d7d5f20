#pragma once

#include "skewkit/distributions.hpp"
#include "skewkit/quantiles.hpp"
#include "skewkit/skewness.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace skewkit {

struct SimConfig
{
  Distribution dist = Distribution::normal(0.0, 1.0);
  std::size_t n = 100;
  std::size_t trials = 1000;
  double level = 0.95;
  std::vector<SkewMeasure> measures;
  std::uint64_t seed = 42;
  unsigned threads = 0; // 0: hardware concurrency
  BandwidthRule bandwidth = BandwidthRule::standard();

  //! Throws ErrorCode::invalid_argument on the first violated constraint.
  void validate() const;
};

struct MeasureCoverage
{
  SkewMeasure measure;
  double truth = 0.0;
  std::size_t covered = 0;
  std::size_t evaluated = 0; // trials - failures
  std::size_t failures = 0;
  double coverage = 0.0;     // covered / evaluated, NaN when nothing was evaluated
  double mean_width = 0.0;
  std::map<std::string, std::size_t> failure_reasons; // keyed by error code name
};

struct CoverageReport
{
  SimConfig config;
  std::vector<MeasureCoverage> measures;
  unsigned threads_used = 1;
  double elapsed_seconds = 0.0;

  //! True when any measure lost more than `max_rate` of its trials.
  bool failure_rate_exceeded(double max_rate = 0.01) const;
};

//! Seeded coverage study. Trial t draws from Philox4x32(seed, t), so the
//! report depends only on the configuration, not on the thread count.
CoverageReport run_coverage(const SimConfig& cfg);

//! sqrt(p0 (1 - p0) / trials).
double coverage_standard_error(std::size_t trials, double p0);

//! Number of worker threads for a request; 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested);

} // namespace skewkit
