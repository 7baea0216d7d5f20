#include "skewkit/distributions.hpp"
#include "skewkit/error.hpp"
#include "skewkit/quantiles.hpp"
#include "skewkit/rng.hpp"
#include "skewkit/special_functions.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

using namespace skewkit;

namespace {

// Direct transcription of the plotting-position rule, kept independent of
// the library implementation.
double type8_reference(std::vector<double> x, double p)
{
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double h = (n + 1.0 / 3.0) * p + 1.0 / 3.0;
  if (h < 1.0)
    h = 1.0;
  if (h > n)
    h = n;
  const double fl = std::floor(h);
  const auto lo = static_cast<std::size_t>(fl);
  if (lo >= x.size())
    return x.back();
  return x[lo - 1] + (h - fl) * (x[lo] - x[lo - 1]);
}

} // namespace

TEST_CASE("SortedSample construction")
{
  SortedSample s({ 3, 1, 2, 5, 4 });
  CHECK(s.size() == 5);
  CHECK(s.order_stat(1) == 1);
  CHECK(s.order_stat(5) == 5);
  CHECK(s.mean() == 3.0);
  CHECK_THROWS_AS(SortedSample({ 1, 2, 3 }), Error);
  CHECK_THROWS_AS(SortedSample({ 1, 2, 3, std::nan("") }), Error);
  CHECK_THROWS_AS(SortedSample({ 1, 2, INFINITY, 4 }), Error);
  CHECK_THROWS_AS(SortedSample::from_sorted({ 1, 3, 2, 4 }), Error);
  CHECK(SortedSample::from_sorted({ 1, 2, 2, 4 }).size() == 4);
}

TEST_CASE("Type 8 hand-derived examples hold exactly")
{
  const SortedSample s({ 10, 20, 30, 40, 50 });
  CHECK(quantile_type8(s, 0.5) == 30.0);
  CHECK(quantile_type8(s, 0.25) == doctest::Approx(50.0 / 3.0).epsilon(1e-15));
  CHECK(quantile_type8(SortedSample({ 1, 2, 3, 4 }), 0.01) == 1.0);
  CHECK(quantile_type8(SortedSample({ 1, 2, 3, 4 }), 0.99) == 4.0);
  CHECK_THROWS_AS(quantile_type8(s, 0.0), Error);
  CHECK_THROWS_AS(quantile_type8(s, 1.0), Error);
}

TEST_CASE("Type 8 matches the reference transcription bit-for-bit")
{
  std::mt19937_64 gen(20240611);
  std::uniform_int_distribution<int> size(4, 60);
  std::uniform_real_distribution<double> val(-100.0, 100.0), prob(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x(static_cast<std::size_t>(size(gen)));
    for (auto& v : x)
      v = val(gen);
    double p = prob(gen);
    if (p <= 0.0)
      p = 0.5;
    const SortedSample s(x);
    CAPTURE(p);
    CHECK(quantile_type8(s, p) == type8_reference(x, p));
  }
}

TEST_CASE("Type 8 is affine-equivariant and monotone in p")
{
  Philox4x32 g(3, 0);
  const auto x = sample(Distribution::lognormal(0, 1), 257, g);
  const SortedSample s(x);
  std::vector<double> y(x.size());
  std::transform(x.begin(), x.end(), y.begin(), [](double v) { return 3.5 * v - 2.0; });
  const SortedSample t(y);
  double prev = -INFINITY;
  for (int i = 1; i < 200; ++i) {
    const double p = i / 200.0;
    const double q = quantile_type8(s, p);
    CHECK(q >= prev);
    prev = q;
    CHECK(quantile_type8(t, p) == doctest::Approx(3.5 * q - 2.0).epsilon(1e-13));
  }
}

TEST_CASE("default bandwidth examples")
{
  CHECK(default_bandwidth(100, 0.5) == doctest::Approx(special::z_975 * 0.05).epsilon(1e-15));
  CHECK(default_bandwidth(100, 0.5) == doctest::Approx(0.098).epsilon(0.001));
  CHECK(default_bandwidth(100, 0.01) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(default_bandwidth(1000000, 0.5) == doctest::Approx(0.00098).epsilon(0.001));
  // both clamps active: the 1/n floor wins
  CHECK(default_bandwidth(100, 0.0025) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(bandwidth(BandwidthRule::fixed_width(0.1), 1000, 0.5) == 0.1);
  CHECK(bandwidth(BandwidthRule::fixed_width(0.1), 1000, 0.02) == doctest::Approx(0.02));
  CHECK_THROWS_AS(BandwidthRule::fixed_width(0.0), Error);
  CHECK_THROWS_AS(BandwidthRule::fixed_width(0.5), Error);
}

TEST_CASE("quantile density estimate recovers known g at the median")
{
  Philox4x32 g(11, 0);
  const SortedSample e(sample(Distribution::exponential(1), 10000, g));
  CHECK(quantile_density_estimate(e, 0.5) == doctest::Approx(2.0).epsilon(0.10));
  const SortedSample z(sample(Distribution::normal(0, 1), 10000, g));
  CHECK(quantile_density_estimate(z, 0.5) == doctest::Approx(special::sqrt_2pi).epsilon(0.10));
}

TEST_CASE("quantile density estimate scales with the data")
{
  Philox4x32 g(12, 0);
  const auto x = sample(Distribution::gamma(2), 500, g);
  std::vector<double> y(x.size());
  std::transform(x.begin(), x.end(), y.begin(), [](double v) { return 4.0 * v + 10.0; });
  const SortedSample s(x), t(y);
  for (double p : { 0.0025, 0.1, 0.5, 0.9, 0.9975 })
    CHECK(quantile_density_estimate(t, p) ==
          doctest::Approx(4.0 * quantile_density_estimate(s, p)).epsilon(1e-12));
}

TEST_CASE("quantile density estimate converges with n")
{
  const auto d = Distribution::exponential(1);
  const double ps[] = { 0.1, 0.25, 0.5, 0.75, 0.9 };
  double prev = INFINITY;
  for (std::size_t n : { 1000u, 10000u, 100000u }) {
    Philox4x32 g(2024, n);
    const SortedSample s(sample(d, n, g));
    std::vector<double> err;
    for (double p : ps)
      err.push_back(std::fabs(quantile_density_estimate(s, p) / d.quantile_density(p) - 1.0));
    std::nth_element(err.begin(), err.begin() + 2, err.end());
    CAPTURE(n);
    CHECK(err[2] <= prev);
    prev = err[2];
  }
}

TEST_CASE("ties give a quantile-density error naming p")
{
  const SortedSample s({ 1, 1, 1, 1, 1, 1, 1, 1, 1, 2 });
  try {
    quantile_density_estimate(s, 0.25);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::quantile_density);
    CHECK(std::string(e.what()).find("0.25") != std::string::npos);
  }
}
