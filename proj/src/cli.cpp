#include "skewkit/cli.hpp"

#include "skewkit/distributions.hpp"
#include "skewkit/inference.hpp"
#include "skewkit/io.hpp"
#include "skewkit/population.hpp"
#include "skewkit/simulation.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace skewkit::cli {

namespace {

using io::json;

struct Common
{
  std::string measures = "all";
  std::string direction = "right";
  int J = default_grid_points;
  double level = 0.95;
  std::string format = "text";
  std::optional<double> bandwidth;
};

Direction parse_direction(const std::string& s)
{
  return s == "left" ? Direction::left : Direction::right;
}

BandwidthRule rule_of(const Common& c)
{
  return c.bandwidth ? BandwidthRule::fixed_width(*c.bandwidth) : BandwidthRule::standard();
}

std::string fmt(double v, const char* spec = "%.4f")
{
  if (!std::isfinite(v))
    return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  std::string s = buf;
  // "-0.0000" -> "0.0000"
  if (s.front() == '-' && s.find_first_not_of("-0.", 0) == std::string::npos)
    s.erase(0, 1);
  return s;
}

std::string ci(double lo, double hi)
{
  if (!std::isfinite(lo) || !std::isfinite(hi))
    return "-";
  return "(" + fmt(lo) + ", " + fmt(hi) + ")";
}

// Text table with left-aligned first column and right-aligned rest.
void print_table(std::ostream& out,
                 const std::vector<std::string>& head,
                 const std::vector<std::vector<std::string>>& rows)
{
  std::vector<std::size_t> w(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    w[c] = head[c].size();
    for (const auto& r : rows)
      w[c] = std::max(w[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c == 0)
        out << std::left << std::setw(static_cast<int>(w[c])) << r[c];
      else
        out << "  " << std::right << std::setw(static_cast<int>(w[c])) << r[c];
    }
    out << '\n';
  };
  line(head);
  for (const auto& r : rows)
    line(r);
}

void print_csv(std::ostream& out,
               const std::vector<std::string>& head,
               const std::vector<std::vector<std::string>>& rows)
{
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c)
      out << (c ? "," : "") << r[c];
    out << '\n';
  };
  line(head);
  for (const auto& r : rows)
    line(r);
}

std::string g6(double v)
{
  return fmt(v, "%.6g");
}

IntervalEstimate point_only(const SkewMeasure& m, double est, double level, std::size_t n)
{
  const double nan = std::numeric_limits<double>::quiet_NaN();
  IntervalEstimate e;
  e.measure = m;
  e.estimate = est;
  e.se = nan;
  e.lower = nan;
  e.upper = nan;
  e.level = level;
  e.n = n;
  return e;
}

// One estimate row; b3 has no interval.
IntervalEstimate estimate_row(const SortedSample& s,
                              const SkewMeasure& m,
                              const Common& c)
{
  if (m.kind == MeasureKind::b3)
    return point_only(m, estimate_b3(s), c.level, s.size());
  return interval(s, m, c.level, rule_of(c));
}

SortedSample load_sample(const std::string& path,
                         const std::string& column,
                         std::ostream& err,
                         io::Column* info = nullptr)
{
  io::Column col = io::read_csv_column(path, column);
  if (col.dropped > 0)
    err << path << ": dropped " << col.dropped << " row(s) without a finite value in '"
        << col.name << "'\n";
  if (info)
    *info = col;
  return SortedSample(std::move(col.values));
}

// --- population -------------------------------------------------------------

int cmd_population(const std::string& dist_text, const Common& c, std::ostream& out)
{
  const Distribution d = Distribution::parse(dist_text);
  const auto measures = parse_measure_list(c.measures, parse_direction(c.direction), c.J);
  std::vector<io::PopulationValue> values;
  for (const auto& m : measures) {
    try {
      values.push_back({ m, population_measure(d, m) });
    } catch (const Error& e) {
      throw e.with_context(m.label() + " for " + d.name());
    }
  }

  if (c.format == "json") {
    json j;
    j["dist"] = d.name();
    j["values"] = json::array();
    for (const auto& v : values)
      j["values"].push_back(io::to_json(v));
    out << j.dump(2) << '\n';
    return exit_ok;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& v : values)
    rows.push_back({ v.measure.label(), c.format == "csv" ? g6(v.value) : fmt(v.value) });
  if (c.format == "csv")
    print_csv(out, { "measure", "value" }, rows);
  else {
    out << d.name() << " (J=" << c.J << ")\n";
    print_table(out, { "measure", "value" }, rows);
  }
  return exit_ok;
}

// --- estimate ---------------------------------------------------------------

int cmd_estimate(const std::string& input,
                 const std::string& column,
                 bool with_mean_skew,
                 const Common& c,
                 std::ostream& out,
                 std::ostream& err)
{
  io::Column info;
  const SortedSample s = load_sample(input, column, err, &info);
  const auto measures = parse_measure_list(c.measures, parse_direction(c.direction), c.J);
  std::vector<IntervalEstimate> rows;
  for (const auto& m : measures) {
    try {
      rows.push_back(estimate_row(s, m, c));
    } catch (const Error& e) {
      throw e.with_context(input + ", " + m.label());
    }
  }

  if (c.format == "json") {
    json j;
    j["input"] = input;
    j["column"] = info.name;
    j["n"] = s.size();
    j["dropped"] = info.dropped;
    j["level"] = c.level;
    j["estimates"] = json::array();
    for (const auto& r : rows) {
      json rj = io::to_json(r);
      if (r.measure.is_auc())
        rj["mean_skew"] = io::to_json(r.mean_skew());
      j["estimates"].push_back(rj);
    }
    out << j.dump(2) << '\n';
    return exit_ok;
  }

  std::vector<std::vector<std::string>> table;
  for (const auto& r : rows) {
    if (c.format == "csv")
      table.push_back({ r.measure.label(), g6(r.estimate), g6(r.se), g6(r.lower), g6(r.upper) });
    else
      table.push_back({ r.measure.label(), fmt(r.estimate), ci(r.lower, r.upper) });
    if (with_mean_skew && r.measure.is_auc()) {
      const auto h = r.mean_skew();
      const std::string label = "mean_skew(" + r.measure.label() + ")";
      if (c.format == "csv")
        table.push_back({ label, g6(h.estimate), g6(h.se), g6(h.lower), g6(h.upper) });
      else
        table.push_back({ label, fmt(h.estimate), ci(h.lower, h.upper) });
    }
  }
  if (c.format == "csv") {
    print_csv(out, { "measure", "estimate", "se", "lower", "upper" }, table);
  } else {
    out << input << " [" << info.name << "] n=" << s.size() << " level=" << c.level << '\n';
    print_table(out, { "measure", "estimate", "CI" }, table);
  }
  return exit_ok;
}

// --- compare ----------------------------------------------------------------

struct CompareRow
{
  IntervalEstimate a, b;
  DifferenceEstimate diff;
};

int cmd_compare(const std::string& input_a,
                const std::string& input_b,
                const std::string& column_a,
                const std::string& column_b,
                const Common& c,
                std::ostream& out,
                std::ostream& err)
{
  const SortedSample a = load_sample(input_a, column_a, err);
  const SortedSample b = load_sample(input_b, column_b, err);
  const auto measures = parse_measure_list(c.measures, parse_direction(c.direction), c.J);

  std::vector<CompareRow> rows;
  for (const auto& m : measures) {
    CompareRow row;
    try {
      row.a = estimate_row(a, m, c);
    } catch (const Error& e) {
      throw e.with_context(input_a + ", " + m.label());
    }
    try {
      row.b = estimate_row(b, m, c);
    } catch (const Error& e) {
      throw e.with_context(input_b + ", " + m.label());
    }
    if (m.kind == MeasureKind::b3) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.diff.measure = m;
      row.diff.estimate_a = row.a.estimate;
      row.diff.estimate_b = row.b.estimate;
      row.diff.variance_a = row.diff.variance_b = nan;
      row.diff.difference = row.a.estimate - row.b.estimate;
      row.diff.se = row.diff.lower = row.diff.upper = nan;
      row.diff.level = c.level;
      row.diff.n_a = a.size();
      row.diff.n_b = b.size();
    } else {
      try {
        row.diff = difference_interval(a, b, m, c.level, rule_of(c));
      } catch (const Error& e) {
        throw e.with_context(input_a + " vs " + input_b);
      }
    }
    rows.push_back(row);
  }

  if (c.format == "json") {
    json j;
    j["input_a"] = input_a;
    j["input_b"] = input_b;
    j["level"] = c.level;
    j["rows"] = json::array();
    for (const auto& r : rows)
      j["rows"].push_back(
        { { "a", io::to_json(r.a) }, { "b", io::to_json(r.b) }, { "difference", io::to_json(r.diff) } });
    out << j.dump(2) << '\n';
    return exit_ok;
  }
  std::vector<std::vector<std::string>> table;
  for (const auto& r : rows) {
    if (c.format == "csv")
      table.push_back({ r.diff.measure.label(), g6(r.a.estimate), g6(r.a.lower), g6(r.a.upper),
                        g6(r.b.estimate), g6(r.b.lower), g6(r.b.upper), g6(r.diff.difference),
                        g6(r.diff.lower), g6(r.diff.upper) });
    else
      table.push_back({ r.diff.measure.label(), fmt(r.a.estimate), ci(r.a.lower, r.a.upper),
                        fmt(r.b.estimate), ci(r.b.lower, r.b.upper), fmt(r.diff.difference),
                        ci(r.diff.lower, r.diff.upper) });
  }
  if (c.format == "csv") {
    print_csv(out, { "measure", "estimate_a", "lower_a", "upper_a", "estimate_b", "lower_b",
                     "upper_b", "difference", "lower_diff", "upper_diff" },
              table);
  } else {
    out << "A=" << input_a << " (n=" << a.size() << ")  B=" << input_b << " (n=" << b.size()
        << ")  level=" << c.level << '\n';
    print_table(out, { "measure", "A", "CI A", "B", "CI B", "A-B", "CI A-B" }, table);
  }
  return exit_ok;
}

// --- simulate ---------------------------------------------------------------

struct SimOverrides
{
  std::string config;
  std::optional<std::string> dist, measures, direction, threads;
  std::optional<long long> n, trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> level, bandwidth;
  std::optional<int> J;
  std::string format = "text";
};

int cmd_simulate(const SimOverrides& o, std::ostream& out, std::ostream& err)
{
  json doc = json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in)
      throw Error(ErrorCode::invalid_argument, o.config + ": cannot open simulation config");
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::invalid_argument, o.config + ": " + e.what());
    }
  }
  if (const char* env = std::getenv("SKEWKIT_THREADS"); env && *env && !doc.contains("threads")) {
    const std::string v = env;
    doc["threads"] = v == "auto" ? json("auto") : json(std::atoll(env));
  }
  if (o.dist)
    doc["dist"] = *o.dist;
  if (o.measures)
    doc["measures"] = *o.measures;
  if (o.direction)
    doc["direction"] = *o.direction;
  if (o.n)
    doc["n"] = *o.n;
  if (o.trials)
    doc["trials"] = *o.trials;
  if (o.seed)
    doc["seed"] = *o.seed;
  if (o.level)
    doc["level"] = *o.level;
  if (o.J)
    doc["J"] = *o.J;
  if (o.bandwidth)
    doc["bandwidth"] = *o.bandwidth;
  if (o.threads)
    doc["threads"] = *o.threads == "auto" ? json("auto") : json(std::atoll(o.threads->c_str()));

  const SimConfig cfg = io::sim_config_from_json(doc);
  const CoverageReport report = run_coverage(cfg);
  err << "simulation: " << cfg.trials << " trials on " << report.threads_used << " thread(s) in "
      << std::fixed << std::setprecision(2) << report.elapsed_seconds << " s\n"
      << std::defaultfloat;

  if (o.format == "json") {
    out << io::to_json(report).dump(2) << '\n';
  } else if (o.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& mc : report.measures)
      rows.push_back({ mc.measure.label(), g6(mc.truth), g6(mc.coverage), g6(mc.mean_width),
                       std::to_string(mc.failures) });
    print_csv(out, { "measure", "truth", "coverage", "mean_width", "failures" }, rows);
  } else {
    out << io::coverage_table(report);
  }

  if (report.failure_rate_exceeded()) {
    for (const auto& mc : report.measures) {
      if (mc.failures == 0)
        continue;
      err << mc.measure.label() << ": " << mc.failures << " of " << cfg.trials
          << " trials failed";
      for (const auto& [reason, count] : mc.failure_reasons)
        err << " [" << reason << ": " << count << "]";
      err << '\n';
    }
    err << "error: failure rate above 1%\n";
    return exit_simulation;
  }
  return exit_ok;
}

// --- curve ------------------------------------------------------------------

int cmd_curve(const std::string& dist_text,
              const std::string& family,
              int points,
              const std::string& direction,
              const std::string& format,
              std::ostream& out)
{
  const Distribution d = Distribution::parse(dist_text);
  const Direction dir = parse_direction(direction);
  const bool lambda = family == "lambda" || family == "lambda_star";
  const bool weighted = family == "gamma_star" || family == "lambda_star";
  const RatioFamily fam = lambda ? RatioFamily::lambda : RatioFamily::gamma;
  const QuantileGrid grid = QuantileGrid::population(d, points);

  std::vector<io::CurvePoint> curve;
  const auto p = grid.lower_probs();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double v = ratio_at(grid, j, fam, dir);
    curve.push_back({ p[j], weighted ? p[j] * v : v });
  }

  if (format == "json") {
    json j;
    j["dist"] = d.name();
    j["family"] = family;
    if (lambda)
      j["direction"] = direction;
    j["points"] = points;
    j["curve"] = json::array();
    for (const auto& c : curve)
      j["curve"].push_back({ { "p", c.p }, { "value", c.value } });
    out << j.dump(2) << '\n';
    return exit_ok;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : curve)
    rows.push_back({ g6(c.p), g6(c.value) });
  if (format == "csv")
    print_csv(out, { "p", "value" }, rows);
  else
    print_table(out, { "p", family }, rows);
  return exit_ok;
}

void add_common(CLI::App* sub, Common& c, bool with_level)
{
  sub->add_option("-m,--measures", c.measures,
                  "comma-separated measures: gamma@p, lambda@p, gamma_star@p, lambda_star@p, "
                  "auc_gamma, auc_lambda, auc_gamma_star, auc_lambda_star, b3, all")
    ->capture_default_str();
  sub->add_option("--direction", c.direction, "lambda denominator tail")
    ->check(CLI::IsMember({ "right", "left" }))
    ->capture_default_str();
  sub->add_option("-J,--grid-points", c.J, "midpoint grid size for AUC measures")
    ->check(CLI::Range(2, 100000))
    ->capture_default_str();
  if (with_level) {
    sub->add_option("--level", c.level, "confidence level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
    sub->add_option("--bandwidth", c.bandwidth, "fixed kernel bandwidth in (0, 0.5)");
  }
  sub->add_option("-f,--format", c.format, "output format")
    ->check(CLI::IsMember({ "text", "json", "csv" }))
    ->capture_default_str();
}

} // namespace

int exit_code_for(ErrorCode code)
{
  switch (code) {
    case ErrorCode::domain:
    case ErrorCode::invalid_argument:
    case ErrorCode::unsupported:
      return exit_usage;
    case ErrorCode::degenerate_scale:
    case ErrorCode::quantile_density:
    case ErrorCode::data:
    case ErrorCode::computation:
      return exit_data;
    case ErrorCode::contract:
      return exit_internal;
  }
  return exit_internal;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{ "Quantile-based skewness measures: population values, estimates with "
                "confidence intervals, two-sample comparisons and coverage simulations" };
  app.name("skewkit");
  app.require_subcommand(1);

  Common pop_c, est_c, cmp_c;
  std::string pop_dist;
  auto* pop = app.add_subcommand("population", "population values of skewness measures");
  pop->add_option("-d,--dist", pop_dist, "distribution, e.g. \"lognormal(0,1)\"")->required();
  add_common(pop, pop_c, false);

  std::string est_input, est_column = "1";
  bool est_mean_skew = false;
  auto* est = app.add_subcommand("estimate", "estimates and confidence intervals for one sample");
  est->add_option("-i,--input", est_input, "CSV file")->required();
  est->add_option("-c,--column", est_column, "column name or 1-based index")->capture_default_str();
  est->add_flag("--mean-skew", est_mean_skew, "also report mean skew (halved AUC intervals)");
  add_common(est, est_c, true);

  std::string cmp_a, cmp_b, cmp_column = "1";
  std::optional<std::string> cmp_col_a, cmp_col_b;
  auto* cmp = app.add_subcommand("compare", "difference of measures between two samples");
  cmp->add_option("-a,--input-a", cmp_a, "CSV file of sample A")->required();
  cmp->add_option("-b,--input-b", cmp_b, "CSV file of sample B")->required();
  cmp->add_option("-c,--column", cmp_column, "column for both files")->capture_default_str();
  cmp->add_option("--column-a", cmp_col_a, "column in file A");
  cmp->add_option("--column-b", cmp_col_b, "column in file B");
  add_common(cmp, cmp_c, true);

  SimOverrides sim_o;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo coverage study");
  sim->add_option("config", sim_o.config, "JSON config file");
  sim->add_option("--dist", sim_o.dist, "override distribution");
  sim->add_option("--n", sim_o.n, "override sample size");
  sim->add_option("--trials", sim_o.trials, "override trial count");
  sim->add_option("--measures", sim_o.measures, "override measure list");
  sim->add_option("--direction", sim_o.direction, "lambda direction for all measures")
    ->check(CLI::IsMember({ "right", "left" }));
  sim->add_option("--seed", sim_o.seed, "override master seed");
  sim->add_option("--level", sim_o.level, "override confidence level");
  sim->add_option("-J,--grid-points", sim_o.J, "AUC grid size");
  sim->add_option("--bandwidth", sim_o.bandwidth, "fixed kernel bandwidth");
  sim->add_option("--threads", sim_o.threads,
                  "worker threads or \"auto\" (default: config, then SKEWKIT_THREADS)");
  sim->add_option("-f,--format", sim_o.format, "output format")
    ->check(CLI::IsMember({ "text", "json", "csv" }))
    ->capture_default_str();

  std::string crv_dist, crv_family = "gamma", crv_direction = "right", crv_format = "text";
  int crv_points = 100;
  auto* crv = app.add_subcommand("curve", "skewness curve on the midpoint grid");
  crv->add_option("-d,--dist", crv_dist, "distribution")->required();
  crv->add_option("--family", crv_family, "curve family")
    ->check(CLI::IsMember({ "gamma", "lambda", "gamma_star", "lambda_star" }))
    ->capture_default_str();
  crv->add_option("-p,--points", crv_points, "number of grid points")
    ->check(CLI::Range(2, 1000000))
    ->capture_default_str();
  crv->add_option("--direction", crv_direction, "lambda denominator tail")
    ->check(CLI::IsMember({ "right", "left" }))
    ->capture_default_str();
  crv->add_option("-f,--format", crv_format, "output format")
    ->check(CLI::IsMember({ "text", "json", "csv" }))
    ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*pop)
      return cmd_population(pop_dist, pop_c, out);
    if (*est)
      return cmd_estimate(est_input, est_column, est_mean_skew, est_c, out, err);
    if (*cmp)
      return cmd_compare(cmp_a, cmp_b, cmp_col_a.value_or(cmp_column),
                         cmp_col_b.value_or(cmp_column), cmp_c, out, err);
    if (*sim)
      return cmd_simulate(sim_o, out, err);
    if (*crv)
      return cmd_curve(crv_dist, crv_family, crv_points, crv_direction, crv_format, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_usage;
}

} // namespace skewkit::cli
