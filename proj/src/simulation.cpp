#include "skewkit/simulation.hpp"

#include "skewkit/asymptotics.hpp"
#include "skewkit/error.hpp"
#include "skewkit/inference.hpp"
#include "skewkit/population.hpp"
#include "skewkit/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

namespace skewkit {

namespace {

// Outcome of one measure in one trial.
struct Cell
{
  double width = 0.0;
  bool covered = false;
  bool failed = false;
  ErrorCode reason = ErrorCode::computation;
};

// Grids shared by the measures of one trial: one per distinct J for AUC
// kinds, one per distinct p for pointwise kinds.
struct GridPlan
{
  std::vector<int> auc_J;
  std::vector<double> point_p;
  std::vector<std::size_t> slot; // measure index -> grid index
};

GridPlan plan_grids(const std::vector<SkewMeasure>& measures)
{
  GridPlan plan;
  for (const auto& m : measures) {
    if (m.is_auc()) {
      if (std::find(plan.auc_J.begin(), plan.auc_J.end(), m.J) == plan.auc_J.end())
        plan.auc_J.push_back(m.J);
    } else if (std::find(plan.point_p.begin(), plan.point_p.end(), m.p) == plan.point_p.end()) {
      plan.point_p.push_back(m.p);
    }
  }
  for (const auto& m : measures) {
    if (m.is_auc())
      plan.slot.push_back(static_cast<std::size_t>(
        std::find(plan.auc_J.begin(), plan.auc_J.end(), m.J) - plan.auc_J.begin()));
    else
      plan.slot.push_back(plan.auc_J.size() +
                          static_cast<std::size_t>(
                            std::find(plan.point_p.begin(), plan.point_p.end(), m.p) -
                            plan.point_p.begin()));
  }
  return plan;
}

void run_trial(const SimConfig& cfg,
               const GridPlan& plan,
               const std::vector<double>& truths,
               double z,
               std::size_t trial,
               Cell* out)
{
  const std::size_t nm = cfg.measures.size();
  Philox4x32 stream(cfg.seed, trial);
  std::optional<SortedSample> drawn;
  try {
    drawn.emplace(sample(cfg.dist, cfg.n, stream));
  } catch (const Error& e) {
    // e.g. draws overflowing to infinity
    for (std::size_t i = 0; i < nm; ++i)
      out[i] = { 0.0, false, true, e.code() };
    return;
  }
  const SortedSample& s = *drawn;

  // Lazily built grids; a failed build is remembered per grid.
  const std::size_t n_auc = plan.auc_J.size();
  std::vector<std::optional<QuantileGrid>> grids(n_auc + plan.point_p.size());
  std::vector<std::optional<ErrorCode>> grid_error(grids.size());

  for (std::size_t i = 0; i < nm; ++i) {
    const SkewMeasure& m = cfg.measures[i];
    const std::size_t g = plan.slot[i];
    Cell& cell = out[i];
    try {
      if (!grids[g] && !grid_error[g]) {
        try {
          if (g < n_auc) {
            grids[g] = QuantileGrid::build(s, plan.auc_J[g], cfg.bandwidth);
          } else {
            const double p[] = { plan.point_p[g - n_auc] };
            grids[g] = QuantileGrid::build_at(s, p, cfg.bandwidth);
          }
        } catch (const Error& e) {
          grid_error[g] = e.code();
        }
      }
      if (grid_error[g]) {
        cell = { 0.0, false, true, *grid_error[g] };
        continue;
      }
      const QuantileGrid& grid = *grids[g];
      const double est = estimate(grid, m);
      const double v = asymptotic_variance(XiKernel::from_grid(grid), grid, m);
      const double half = z * std::sqrt(v / static_cast<double>(cfg.n));
      cell.width = 2.0 * half;
      cell.covered = (est - half <= truths[i]) && (truths[i] <= est + half);
      cell.failed = false;
    } catch (const Error& e) {
      cell = { 0.0, false, true, e.code() };
    }
  }
}

} // namespace

void SimConfig::validate() const
{
  if (trials < 1)
    throw Error(ErrorCode::invalid_argument, "trials must be >= 1");
  if (n < 10)
    throw Error(ErrorCode::invalid_argument, "sample size n must be >= 10");
  if (!(level > 0.0 && level < 1.0))
    throw Error(ErrorCode::invalid_argument, "level must lie in (0,1)");
  if (measures.empty())
    throw Error(ErrorCode::invalid_argument, "at least one measure is required");
  for (const auto& m : measures)
    if (m.kind == MeasureKind::b3)
      throw Error(ErrorCode::unsupported, "b3 has no interval; cannot simulate its coverage");
}

bool CoverageReport::failure_rate_exceeded(double max_rate) const
{
  const double trials = static_cast<double>(config.trials);
  return std::any_of(measures.begin(), measures.end(), [&](const MeasureCoverage& mc) {
    return static_cast<double>(mc.failures) > max_rate * trials;
  });
}

double coverage_standard_error(std::size_t trials, double p0)
{
  return std::sqrt(p0 * (1.0 - p0) / static_cast<double>(trials));
}

unsigned resolve_threads(unsigned requested)
{
  if (requested > 0)
    return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

CoverageReport run_coverage(const SimConfig& cfg)
{
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  const std::size_t nm = cfg.measures.size();
  std::vector<double> truths(nm);
  for (std::size_t i = 0; i < nm; ++i) {
    try {
      truths[i] = population_measure(cfg.dist, cfg.measures[i]);
    } catch (const Error& e) {
      throw e.with_context("population value of " + cfg.measures[i].label());
    }
  }
  const GridPlan plan = plan_grids(cfg.measures);
  const double z = z_quantile(0.5 + 0.5 * cfg.level);

  // cells[t * nm + i]: written by exactly one worker, reduced in trial order.
  std::vector<Cell> cells(cfg.trials * nm);
  const unsigned threads =
    static_cast<unsigned>(std::min<std::size_t>(resolve_threads(cfg.threads), cfg.trials));
  std::atomic<std::size_t> next{ 0 };
  std::mutex fault_mutex;
  std::exception_ptr fault;
  auto worker = [&] {
    try {
      for (std::size_t t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1))
        run_trial(cfg, plan, truths, z, t, cells.data() + t * nm);
    } catch (...) {
      next.store(cfg.trials);
      const std::lock_guard<std::mutex> lock(fault_mutex);
      if (!fault)
        fault = std::current_exception();
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back(worker);
  }
  if (fault)
    std::rethrow_exception(fault);

  CoverageReport report;
  report.config = cfg;
  report.threads_used = threads;
  report.measures.resize(nm);
  for (std::size_t i = 0; i < nm; ++i) {
    MeasureCoverage& mc = report.measures[i];
    mc.measure = cfg.measures[i];
    mc.truth = truths[i];
    double width_sum = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const Cell& c = cells[t * nm + i];
      if (c.failed) {
        ++mc.failures;
        ++mc.failure_reasons[to_string(c.reason)];
        continue;
      }
      ++mc.evaluated;
      mc.covered += c.covered ? 1 : 0;
      width_sum += c.width;
    }
    if (mc.evaluated > 0) {
      mc.coverage = static_cast<double>(mc.covered) / static_cast<double>(mc.evaluated);
      mc.mean_width = width_sum / static_cast<double>(mc.evaluated);
    } else {
      mc.coverage = std::numeric_limits<double>::quiet_NaN();
      mc.mean_width = std::numeric_limits<double>::quiet_NaN();
    }
  }
  report.elapsed_seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

} // namespace skewkit
