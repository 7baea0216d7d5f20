#include "skewkit/asymptotics.hpp"
#include "skewkit/distributions.hpp"
#include "skewkit/error.hpp"
#include "skewkit/rng.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

using namespace skewkit;

namespace {

// Linear combination sum_i c_i x_{p_i}.
using Combo = std::vector<std::pair<double, double>>; // (probability, coefficient)

Combo s_combo(double p)
{
  return { { 1.0 - p, 1.0 }, { p, 1.0 }, { 0.5, -2.0 } };
}
Combo r1_combo(double p)
{
  return { { 1.0 - p, 1.0 }, { p, -1.0 } };
}
Combo r2_combo(double p, Direction d)
{
  if (d == Direction::right)
    return { { 0.5, 1.0 }, { p, -1.0 } };
  return { { 1.0 - p, 1.0 }, { 0.5, -1.0 } };
}

// Cov distributed over both combinations; returns value and the sum of
// absolute terms for a relative tolerance.
std::pair<double, double> brute_cov(const XiKernel& k, const Combo& a, const Combo& b)
{
  double v = 0.0, mag = 0.0;
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) {
      const double t = ca * cb * xi(k, pa, pb);
      v += t;
      mag += std::fabs(t);
    }
  return { v, mag };
}

// Kernel over {p, q, 1-p, 1-q, 0.5} with random positive densities.
XiKernel random_kernel(std::mt19937_64& gen, double p, double q, std::size_t n)
{
  std::vector<double> probs = { p, q, 0.5, 1.0 - p, 1.0 - q };
  std::sort(probs.begin(), probs.end());
  probs.erase(std::unique(probs.begin(), probs.end()), probs.end());
  std::uniform_real_distribution<double> dens(0.1, 20.0);
  std::vector<double> g(probs.size());
  for (auto& v : g)
    v = dens(gen);
  return XiKernel(n, probs, g);
}

SortedSample draw(const char* dist, std::size_t n, std::uint64_t seed)
{
  Philox4x32 rng(seed, 0);
  return SortedSample(sample(Distribution::parse(dist), n, rng));
}

} // namespace

TEST_CASE("xi examples and errors")
{
  const XiKernel a(1, { 0.5 }, { 1.0 });
  CHECK(xi(a, 0.5, 0.5) == 0.25);
  const XiKernel b(100, { 0.25, 0.75 }, { 2.0, 2.0 });
  CHECK(xi(b, 0.25, 0.75) == doctest::Approx(0.0025).epsilon(1e-15));
  CHECK(xi(b, 0.75, 0.25) == xi(b, 0.25, 0.75));
  CHECK(xi(b, 0.25, 0.25) == doctest::Approx(0.25 * 0.75 * 4.0 / 100.0).epsilon(1e-15));
  CHECK_THROWS_AS(xi(b, 0.3, 0.25), Error);
  CHECK_THROWS_AS(XiKernel(0, { 0.5 }, { 1.0 }), Error);
  CHECK_THROWS_AS(XiKernel(10, { 0.5, 0.4 }, { 1.0, 1.0 }), Error);
  CHECK_THROWS_AS(XiKernel(10, { 0.5 }, { 0.0 }), Error);
}

TEST_CASE("covariance expansions match the brute-force bilinear engine")
{
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> prob(0.01, 0.49);
  for (int t = 0; t < 300; ++t) {
    const double p = prob(gen);
    const double q = t % 5 == 0 ? p : prob(gen);
    const auto k = random_kernel(gen, p, q, 1 + static_cast<std::size_t>(t));
    auto check = [](double got, std::pair<double, double> want) {
      CHECK(std::fabs(got - want.first) <= 1e-14 * want.second);
    };
    check(cov_s_s(k, p, q), brute_cov(k, s_combo(p), s_combo(q)));
    check(cov_s_r1(k, p, q), brute_cov(k, s_combo(p), r1_combo(q)));
    check(cov_r1_s(k, p, q), brute_cov(k, r1_combo(p), s_combo(q)));
    check(cov_r1_r1(k, p, q), brute_cov(k, r1_combo(p), r1_combo(q)));
    for (auto d : { Direction::right, Direction::left }) {
      check(cov_s_r2(k, p, q, d), brute_cov(k, s_combo(p), r2_combo(q, d)));
      check(cov_r2_s(k, p, q, d), brute_cov(k, r2_combo(p, d), s_combo(q)));
      check(cov_r2_r2(k, p, q, d), brute_cov(k, r2_combo(p, d), r2_combo(q, d)));
    }
  }
}

TEST_CASE("covariance identities")
{
  std::mt19937_64 gen(7);
  const auto k = random_kernel(gen, 0.1, 0.3, 50);
  CHECK(cov_r1_r1(k, 0.1, 0.1) ==
        doctest::Approx(xi(k, 0.9, 0.9) - 2.0 * xi(k, 0.1, 0.9) + xi(k, 0.1, 0.1)).epsilon(1e-14));
  CHECK(cov_s_r1(k, 0.1, 0.3) == doctest::Approx(cov_r1_s(k, 0.3, 0.1)).epsilon(1e-14));
  CHECK(cov_s_r2(k, 0.1, 0.3) == doctest::Approx(cov_r2_s(k, 0.3, 0.1)).epsilon(1e-14));
  CHECK(cov_s_r2(k, 0.1, 0.3, Direction::left) ==
        doctest::Approx(cov_r2_s(k, 0.3, 0.1, Direction::left)).epsilon(1e-14));

  // g symmetric about 1/2 (normal): s and r1 are uncorrelated at p = q
  const auto grid = QuantileGrid::population(Distribution::normal(0, 1), 20);
  const auto kn = XiKernel::from_grid(grid, 1000);
  for (double p : grid.lower_probs())
    CHECK(std::fabs(cov_s_r1(kn, p, p)) <= 1e-13 * std::fabs(cov_r1_r1(kn, p, p)));
}

TEST_CASE("xi matrix is positive semidefinite")
{
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> prob(0.0, 1.0), dens(0.01, 50.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> probs;
    while (probs.size() < 10) {
      const double p = prob(gen);
      if (p > 0.0 && std::find(probs.begin(), probs.end(), p) == probs.end())
        probs.push_back(p);
    }
    std::sort(probs.begin(), probs.end());
    std::vector<double> g(10);
    for (auto& v : g)
      v = dens(gen);
    const XiKernel k(1, probs, g);
    Eigen::MatrixXd m(10, 10);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        m(i, j) = k.xi_at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const double scale = m.diagonal().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m / scale);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("sigma_cross: diagonal, symmetry and non-negativity")
{
  const auto s = draw("lognormal(0,1)", 800, 1);
  const auto grid = QuantileGrid::build(s, 25);
  const auto k = XiKernel::from_grid(grid);
  const auto p = grid.lower_probs();
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(sigma_cross(k, grid, p[i], p[i], RatioFamily::gamma) == sigma1_sq(k, grid, p[i]));
    for (auto d : { Direction::right, Direction::left })
      CHECK(sigma_cross(k, grid, p[i], p[i], RatioFamily::lambda, d) == sigma2_sq(k, grid, p[i], d));
    for (std::size_t j = 0; j < p.size(); j += 3)
      for (auto fam : { RatioFamily::gamma, RatioFamily::lambda }) {
        const double a = sigma_cross(k, grid, p[i], p[j], fam);
        const double b = sigma_cross(k, grid, p[j], p[i], fam);
        // relative to the covariance scale sqrt(sigma_pp sigma_qq)
        const double scale = std::sqrt(sigma_cross(k, grid, p[i], p[i], fam) *
                                       sigma_cross(k, grid, p[j], p[j], fam));
        CHECK(std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), scale));
      }
  }
}

TEST_CASE("sigma squared is non-negative across the zoo")
{
  for (const char* name : { "normal(0,1)", "lognormal(0,1)", "lognormal(1,2)", "exp(1)", "chisq(5)",
                            "pareto2(1,4)", "weibull(0.5)", "weibull(10)", "gamma(0.3)", "beta(5,10)",
                            "beta(0.5,0.5)", "f(2,8)" }) {
    const auto grid = QuantileGrid::population(Distribution::parse(name), 50);
    const auto k = XiKernel::from_grid(grid, 1);
    for (double p : grid.lower_probs()) {
      CAPTURE(name);
      CAPTURE(p);
      CHECK(sigma1_sq(k, grid, p) >= 0.0);
      CHECK(sigma2_sq(k, grid, p) >= 0.0);
      CHECK(sigma2_sq(k, grid, p, Direction::left) >= 0.0);
    }
  }
}

TEST_CASE("sigma1_sq at zero skewness reduces to Var(s)/r^2")
{
  const auto grid = QuantileGrid::population(Distribution::normal(0, 1), 10);
  const auto k = XiKernel::from_grid(grid, 100);
  for (double p : grid.lower_probs()) {
    const double r = r1_p(grid, p);
    CHECK(sigma1_sq(k, grid, p) == doctest::Approx(100.0 * cov_s_s(k, p, p) / (r * r)).epsilon(1e-9));
  }
}

TEST_CASE("auc_variance equals the naive double sum")
{
  const auto s = draw("exp(1)", 600, 2);
  for (int J : { 1, 2, 7, 40 }) {
    const auto grid = QuantileGrid::build(s, J);
    const auto k = XiKernel::from_grid(grid);
    const auto p = grid.lower_probs();
    for (auto fam : { RatioFamily::gamma, RatioFamily::lambda })
      for (auto dir : { Direction::right, Direction::left })
        for (bool weighted : { false, true }) {
          double naive = 0.0;
          for (double pj : p)
            for (double pk : p)
              naive += (weighted ? pj * pk : 1.0) * sigma_cross(k, grid, pj, pk, fam, dir);
          naive *= 0.25 / (static_cast<double>(J) * J);
          CAPTURE(J);
          CHECK(auc_variance(k, grid, fam, weighted, dir) == doctest::Approx(naive).epsilon(1e-10));
        }
    if (J == 1)
      CHECK(auc_variance(k, grid, RatioFamily::gamma, false) ==
            doctest::Approx(0.25 * sigma1_sq(k, grid, p[0])).epsilon(1e-12));
  }
}

TEST_CASE("variances are invariant under rescaling the sample")
{
  Philox4x32 rng(3, 0);
  auto x = sample(Distribution::gamma(2), 400, rng);
  const SortedSample s(x);
  for (auto& v : x)
    v = 7.25 * v + 3.0;
  const SortedSample t(x);
  const auto gs = QuantileGrid::build(s, 30);
  const auto gt = QuantileGrid::build(t, 30);
  const auto ks = XiKernel::from_grid(gs);
  const auto kt = XiKernel::from_grid(gt);
  for (const auto& m : parse_measure_list("all", Direction::right, 30)) {
    if (m.kind == MeasureKind::b3)
      continue;
    QuantileGrid ps = gs, pt = gt;
    if (!m.is_auc()) {
      const double pp[] = { m.p };
      ps = QuantileGrid::build_at(s, pp);
      pt = QuantileGrid::build_at(t, pp);
    }
    const double a = asymptotic_variance(XiKernel::from_grid(ps), ps, m);
    const double b = asymptotic_variance(XiKernel::from_grid(pt), pt, m);
    CAPTURE(m.label());
    CHECK(std::fabs(a - b) <= 1e-10 * a);
  }
  for (double p : gs.lower_probs())
    for (double q : { gs.lower_probs()[3], gs.lower_probs()[17] }) {
      const double a = sigma_cross(ks, gs, p, q, RatioFamily::gamma);
      CHECK(std::fabs(a - sigma_cross(kt, gt, p, q, RatioFamily::gamma)) <= 1e-10 * std::fabs(a));
      CHECK(ks.xi_at(0, 1) * 7.25 * 7.25 == doctest::Approx(kt.xi_at(0, 1)).epsilon(1e-10));
    }
}

TEST_CASE("asymptotic_variance dispatch")
{
  const auto s = draw("lognormal(0,1)", 300, 4);
  const double pp[] = { 0.1 };
  const auto g = QuantileGrid::build_at(s, pp);
  const auto k = XiKernel::from_grid(g);
  CHECK(asymptotic_variance(k, g, SkewMeasure::gamma_star(0.1)) ==
        doctest::Approx(0.01 * asymptotic_variance(k, g, SkewMeasure::gamma(0.1))).epsilon(1e-14));
  CHECK_THROWS_AS(asymptotic_variance(k, g, SkewMeasure::b3()), Error);
  CHECK_THROWS_AS(asymptotic_variance(k, g, SkewMeasure::auc_gamma()), Error);
  CHECK_THROWS_AS(asymptotic_variance(k, g, SkewMeasure::gamma(0.2)), Error);
}
