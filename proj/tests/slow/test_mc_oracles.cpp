// Monte Carlo oracles for the variance formulas and interval behaviour.
#include <doctest.h>

#include "skewkit/asymptotics.hpp"
#include "skewkit/distributions.hpp"
#include "skewkit/inference.hpp"
#include "skewkit/population.hpp"
#include "skewkit/quantiles.hpp"
#include "skewkit/rng.hpp"
#include "skewkit/simulation.hpp"
#include "skewkit/skewness.hpp"

#include <cmath>
#include <vector>

using namespace skewkit;

namespace {

constexpr std::uint64_t seed = 77001;

double cov(const std::vector<double>& a, const std::vector<double>& b)
{
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    c += (a[i] - ma) * (b[i] - mb);
  return c / (n - 1.0);
}

// Type 8 quantiles at probs for `reps` samples of size n; out[k][rep].
std::vector<std::vector<double>> replicate_quantiles(const Distribution& d,
                                                     std::size_t n,
                                                     std::size_t reps,
                                                     const std::vector<double>& probs,
                                                     std::uint64_t key)
{
  std::vector<std::vector<double>> out(probs.size(), std::vector<double>(reps));
  for (std::size_t r = 0; r < reps; ++r) {
    Philox4x32 rng(key, r);
    const SortedSample s(sample(d, n, rng));
    for (std::size_t k = 0; k < probs.size(); ++k)
      out[k][r] = quantile_type8(s, probs[k]);
  }
  return out;
}

struct Taps
{
  const std::vector<double>&lo, &mid, &hi;
};

std::vector<double> s_series(Taps t)
{
  std::vector<double> v(t.lo.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = t.hi[i] + t.lo[i] - 2.0 * t.mid[i];
  return v;
}

std::vector<double> gamma_series(Taps t)
{
  std::vector<double> v(t.lo.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = (t.hi[i] + t.lo[i] - 2.0 * t.mid[i]) / (t.hi[i] - t.lo[i]);
  return v;
}

SimConfig config(const char* dist, std::size_t n, const char* measures, std::size_t trials = 1000)
{
  SimConfig c;
  c.dist = Distribution::parse(dist);
  c.n = n;
  c.trials = trials;
  c.measures = parse_measure_list(measures);
  c.seed = seed;
  return c;
}

} // namespace

TEST_CASE("Exp(1): empirical Cov(s_p, s_q) and n Cov(g_p, g_q) match the expansions")
{
  const auto d = Distribution::exponential(1);
  const std::size_t n = 10000, reps = 20000;
  const std::vector<double> probs = { 0.15, 0.2, 0.3, 0.35, 0.5, 0.65, 0.7, 0.8, 0.85 };
  const auto x = replicate_quantiles(d, n, reps, probs, seed + 1);
  const Taps t15{ x[0], x[4], x[8] }, t20{ x[1], x[4], x[7] }, t30{ x[2], x[4], x[6] },
    t35{ x[3], x[4], x[5] };

  {
    const double lower[] = { 0.2, 0.3 };
    const auto grid = QuantileGrid::population_at(d, lower);
    const auto k = XiKernel::from_grid(grid, n);
    const double formula = cov_s_s(k, 0.2, 0.3);
    const double empirical = cov(s_series(t20), s_series(t30));
    CAPTURE(formula);
    CAPTURE(empirical);
    CHECK(std::fabs(empirical / formula - 1.0) <= 0.05);
  }
  {
    const double lower[] = { 0.15, 0.35 };
    const auto grid = QuantileGrid::population_at(d, lower);
    const auto k = XiKernel::from_grid(grid, n);
    const double formula = sigma_cross(k, grid, 0.15, 0.35, RatioFamily::gamma);
    const double empirical = static_cast<double>(n) * cov(gamma_series(t15), gamma_series(t35));
    CAPTURE(formula);
    CAPTURE(empirical);
    CHECK(std::fabs(empirical / formula - 1.0) <= 0.07);
  }
}

TEST_CASE("Normal(0,1): sigma1_sq at p=0.25 matches n Var(g_p)")
{
  const auto d = Distribution::normal(0, 1);
  const std::size_t n = 10000, reps = 20000;
  const auto x = replicate_quantiles(d, n, reps, { 0.25, 0.5, 0.75 }, seed + 2);
  const double lower[] = { 0.25 };
  const auto grid = QuantileGrid::population_at(d, lower);
  const auto k = XiKernel::from_grid(grid, n);
  const double formula = sigma1_sq(k, grid, 0.25);
  const auto g = gamma_series({ x[0], x[1], x[2] });
  const double empirical = static_cast<double>(n) * cov(g, g);
  CAPTURE(formula);
  CAPTURE(empirical);
  CHECK(std::fabs(empirical / formula - 1.0) <= 0.05);
}

TEST_CASE("LN(0,1) n=1000: auc_variance matches n Var(AUC_gamma)")
{
  const auto d = Distribution::lognormal(0, 1);
  const std::size_t n = 1000, reps = 20000;
  const auto m = SkewMeasure::auc_gamma();
  std::vector<double> est(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    Philox4x32 rng(seed + 3, r);
    est[r] = estimate(SortedSample(sample(d, n, rng)), m);
  }
  const auto grid = QuantileGrid::population(d, m.J);
  const auto k = XiKernel::from_grid(grid, n);
  const double formula = auc_variance(k, grid, RatioFamily::gamma, false, Direction::right);
  const double empirical = static_cast<double>(n) * cov(est, est);
  CAPTURE(formula);
  CAPTURE(empirical);
  CHECK(std::fabs(empirical / formula - 1.0) <= 0.10);
}

TEST_CASE("LN(0,1) n=5000 lambda_0.05 mean width near 0.85")
{
  const auto r = run_coverage(config("lognormal(0,1)", 5000, "lambda@0.05"));
  const auto& mc = r.measures.front();
  CAPTURE(mc.coverage);
  CAPTURE(mc.mean_width);
  CHECK(std::fabs(mc.mean_width / 0.85 - 1.0) <= 0.15);
  CHECK(mc.coverage >= 0.90);
}

TEST_CASE("difference interval: equal skew covers 0, LN vs Normal excludes it")
{
  const std::size_t n = 5000, reps = 1000;
  const auto ln = Distribution::lognormal(0, 1);
  const auto norm = Distribution::normal(0, 1);
  const auto m = SkewMeasure::auc_gamma();
  std::size_t covered = 0, rejected = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    Philox4x32 ra(seed + 4, 3 * r), rb(seed + 4, 3 * r + 1), rc(seed + 4, 3 * r + 2);
    const SortedSample a(sample(ln, n, ra));
    const SortedSample b(sample(ln, n, rb));
    const SortedSample c(sample(norm, n, rc));
    const auto same = difference_interval(a, b, m);
    covered += same.lower <= 0.0 && 0.0 <= same.upper ? 1 : 0;
    const auto diff = difference_interval(a, c, m);
    rejected += diff.lower > 0.0 || diff.upper < 0.0 ? 1 : 0;
  }
  const double coverage = static_cast<double>(covered) / reps;
  const double power = static_cast<double>(rejected) / reps;
  CAPTURE(coverage);
  CAPTURE(power);
  // binomial SE at 1000 trials is about 0.007; the AUC intervals are conservative
  CHECK(coverage >= 0.93);
  CHECK(coverage <= 0.995);
  CHECK(power >= 0.90);
}

TEST_CASE("coverage trends across n")
{
  SUBCASE("AUC_gamma on LN(0,1) is at least as conservative at n=50 as at n=5000")
  {
    const double small = run_coverage(config("lognormal(0,1)", 50, "auc_gamma")).measures[0].coverage;
    const double large = run_coverage(config("lognormal(0,1)", 5000, "auc_gamma")).measures[0].coverage;
    CAPTURE(small);
    CAPTURE(large);
    CHECK(small >= large - 0.005);
    CHECK(large >= 0.90);
  }
  SUBCASE("mean width strictly decreases over n = 50, 200, 1000")
  {
    const char* cells[][2] = { { "lognormal(0,1)", "lambda@0.1,auc_gamma,gamma_star@0.25" },
                               { "exp(1)", "auc_lambda,gamma@0.05" },
                               { "normal(2,1)", "auc_gamma,lambda@0.2" } };
    for (const auto& cell : cells) {
      std::vector<CoverageReport> runs;
      for (std::size_t n : { 50u, 200u, 1000u })
        runs.push_back(run_coverage(config(cell[0], n, cell[1])));
      for (std::size_t i = 0; i < runs[0].measures.size(); ++i) {
        CAPTURE(std::string(cell[0]));
        CAPTURE(runs[0].measures[i].measure.label());
        CHECK(runs[0].measures[i].mean_width > runs[1].measures[i].mean_width);
        CHECK(runs[1].measures[i].mean_width > runs[2].measures[i].mean_width);
        for (const auto& r : runs)
          CHECK(r.measures[i].coverage >= 0.90);
      }
    }
  }
}
