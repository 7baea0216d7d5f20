#include "skewkit/io.hpp"

#include "skewkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace skewkit::io {

namespace {

// NaN and infinities travel as null.
json num(double v)
{
  return std::isfinite(v) ? json(v) : json(nullptr);
}

double get_num(const json& j, const char* key)
{
  const json& v = j.at(key);
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::string trim(std::string s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_fields(const std::string& line)
{
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (char c : line) {
    if (c == '"')
      quoted = !quoted;
    if (c == ',' && !quoted) {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(trim(field));
  return out;
}

// Full-field numeric parse; "nan"/"inf" count as numbers (dropped later).
bool parse_number(const std::string& s, double& out)
{
  if (s.empty())
    return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool all_digits(const std::string& s)
{
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

Error data_error(const std::string& path, const std::string& what)
{
  return Error(ErrorCode::data, path + ": " + what);
}

} // namespace

void put_measure(json& j, const SkewMeasure& m)
{
  j["measure"] = m.label();
  if (m.is_auc())
    j["J"] = m.J;
}

SkewMeasure get_measure(const json& j)
{
  const int J = j.contains("J") ? j.at("J").get<int>() : default_grid_points;
  return SkewMeasure::parse(j.at("measure").get<std::string>(), Direction::right, J);
}

json to_json(const PopulationValue& v)
{
  json j;
  put_measure(j, v.measure);
  j["value"] = num(v.value);
  return j;
}

PopulationValue population_value_from_json(const json& j)
{
  return { get_measure(j), get_num(j, "value") };
}

json to_json(const IntervalEstimate& e)
{
  json j;
  put_measure(j, e.measure);
  j["estimate"] = num(e.estimate);
  j["se"] = num(e.se);
  j["lower"] = num(e.lower);
  j["upper"] = num(e.upper);
  j["level"] = e.level;
  j["n"] = e.n;
  return j;
}

IntervalEstimate interval_from_json(const json& j)
{
  IntervalEstimate e;
  e.measure = get_measure(j);
  e.estimate = get_num(j, "estimate");
  e.se = get_num(j, "se");
  e.lower = get_num(j, "lower");
  e.upper = get_num(j, "upper");
  e.level = j.at("level").get<double>();
  e.n = j.at("n").get<std::size_t>();
  return e;
}

json to_json(const DifferenceEstimate& d)
{
  json j;
  put_measure(j, d.measure);
  j["estimate_a"] = num(d.estimate_a);
  j["estimate_b"] = num(d.estimate_b);
  j["variance_a"] = num(d.variance_a);
  j["variance_b"] = num(d.variance_b);
  j["difference"] = num(d.difference);
  j["se"] = num(d.se);
  j["lower"] = num(d.lower);
  j["upper"] = num(d.upper);
  j["level"] = d.level;
  j["n_a"] = d.n_a;
  j["n_b"] = d.n_b;
  return j;
}

DifferenceEstimate difference_from_json(const json& j)
{
  DifferenceEstimate d;
  d.measure = get_measure(j);
  d.estimate_a = get_num(j, "estimate_a");
  d.estimate_b = get_num(j, "estimate_b");
  d.variance_a = get_num(j, "variance_a");
  d.variance_b = get_num(j, "variance_b");
  d.difference = get_num(j, "difference");
  d.se = get_num(j, "se");
  d.lower = get_num(j, "lower");
  d.upper = get_num(j, "upper");
  d.level = j.at("level").get<double>();
  d.n_a = j.at("n_a").get<std::size_t>();
  d.n_b = j.at("n_b").get<std::size_t>();
  return d;
}

json to_json(const SimConfig& cfg)
{
  json j;
  j["dist"] = cfg.dist.name();
  j["n"] = cfg.n;
  j["trials"] = cfg.trials;
  j["level"] = cfg.level;
  j["seed"] = cfg.seed;
  json ms = json::array();
  for (const auto& m : cfg.measures) {
    json mj;
    put_measure(mj, m);
    ms.push_back(mj);
  }
  j["measures"] = ms;
  if (cfg.bandwidth.kind == BandwidthRule::Kind::fixed)
    j["bandwidth"] = cfg.bandwidth.value;
  else
    j["bandwidth"] = "standard";
  return j;
}

json to_json(const CoverageReport& r)
{
  json j;
  j["config"] = to_json(r.config);
  json rows = json::array();
  for (const auto& mc : r.measures) {
    json row;
    put_measure(row, mc.measure);
    row["truth"] = num(mc.truth);
    row["coverage"] = num(mc.coverage);
    row["mean_width"] = num(mc.mean_width);
    row["covered"] = mc.covered;
    row["evaluated"] = mc.evaluated;
    row["failures"] = mc.failures;
    row["failure_reasons"] = mc.failure_reasons;
    rows.push_back(row);
  }
  j["results"] = rows;
  j["failure_rate_exceeded"] = r.failure_rate_exceeded();
  return j;
}

CoverageReport coverage_report_from_json(const json& j)
{
  CoverageReport r;
  const json& c = j.at("config");
  r.config.dist = Distribution::parse(c.at("dist").get<std::string>());
  r.config.n = c.at("n").get<std::size_t>();
  r.config.trials = c.at("trials").get<std::size_t>();
  r.config.level = c.at("level").get<double>();
  r.config.seed = c.at("seed").get<std::uint64_t>();
  for (const auto& mj : c.at("measures"))
    r.config.measures.push_back(get_measure(mj));
  if (c.contains("bandwidth") && c.at("bandwidth").is_number())
    r.config.bandwidth = BandwidthRule::fixed_width(c.at("bandwidth").get<double>());
  for (const auto& row : j.at("results")) {
    MeasureCoverage mc;
    mc.measure = get_measure(row);
    mc.truth = get_num(row, "truth");
    mc.coverage = get_num(row, "coverage");
    mc.mean_width = get_num(row, "mean_width");
    mc.covered = row.at("covered").get<std::size_t>();
    mc.evaluated = row.at("evaluated").get<std::size_t>();
    mc.failures = row.at("failures").get<std::size_t>();
    mc.failure_reasons = row.at("failure_reasons").get<std::map<std::string, std::size_t>>();
    r.measures.push_back(std::move(mc));
  }
  return r;
}

SimConfig sim_config_from_json(const json& j)
{
  if (!j.is_object())
    throw Error(ErrorCode::invalid_argument, "simulation config must be a JSON object");
  static const char* const known[] = { "dist", "n", "trials", "level", "measures",
                                       "seed", "threads", "J", "direction", "bandwidth" };
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known)
      ok = ok || key == k;
    if (!ok)
      throw Error(ErrorCode::invalid_argument, "unknown simulation config key '" + key + "'");
  }
  for (const char* required : { "dist", "n", "trials", "measures", "seed" })
    if (!j.contains(required))
      throw Error(ErrorCode::invalid_argument,
                  std::string("simulation config lacks required key '") + required + "'");

  try {
    SimConfig cfg;
    cfg.dist = Distribution::parse(j.at("dist").get<std::string>());
    const auto n = j.at("n").get<long long>();
    const auto trials = j.at("trials").get<long long>();
    if (n < 0 || trials < 0)
      throw Error(ErrorCode::invalid_argument, "n and trials must be non-negative");
    cfg.n = static_cast<std::size_t>(n);
    cfg.trials = static_cast<std::size_t>(trials);
    if (j.contains("level"))
      cfg.level = j.at("level").get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();

    Direction dir = Direction::right;
    if (j.contains("direction")) {
      const auto d = j.at("direction").get<std::string>();
      if (d == "left")
        dir = Direction::left;
      else if (d != "right")
        throw Error(ErrorCode::invalid_argument, "direction must be 'left' or 'right'");
    }
    const int J = j.contains("J") ? j.at("J").get<int>() : default_grid_points;
    const json& ms = j.at("measures");
    if (ms.is_string()) {
      cfg.measures = parse_measure_list(ms.get<std::string>(), dir, J);
    } else {
      for (const auto& tok : ms) {
        auto part = parse_measure_list(tok.get<std::string>(), dir, J);
        cfg.measures.insert(cfg.measures.end(), part.begin(), part.end());
      }
    }

    if (j.contains("threads")) {
      const json& t = j.at("threads");
      if (t.is_string()) {
        if (t.get<std::string>() != "auto")
          throw Error(ErrorCode::invalid_argument, "threads must be a positive integer or \"auto\"");
        cfg.threads = 0;
      } else {
        const auto v = t.get<long long>();
        if (v < 1)
          throw Error(ErrorCode::invalid_argument, "threads must be a positive integer or \"auto\"");
        cfg.threads = static_cast<unsigned>(v);
      }
    }
    if (j.contains("bandwidth")) {
      const json& b = j.at("bandwidth");
      if (b.is_number())
        cfg.bandwidth = BandwidthRule::fixed_width(b.get<double>());
      else if (b.get<std::string>() != "standard")
        throw Error(ErrorCode::invalid_argument, "bandwidth must be a number or \"standard\"");
    }
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("simulation config: ") + e.what());
  }
}

std::string coverage_cell(double coverage, double width)
{
  if (!std::isfinite(coverage))
    return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f(%.2f)", coverage, width);
  return buf;
}

std::string coverage_table(const CoverageReport& r)
{
  std::ostringstream out;
  out << "dist=" << r.config.dist.name() << " n=" << r.config.n << " trials=" << r.config.trials
      << " level=" << r.config.level << " seed=" << r.config.seed << '\n';
  std::size_t w = std::string("measure").size();
  for (const auto& mc : r.measures)
    w = std::max(w, mc.measure.label().size());
  out << std::left << std::setw(static_cast<int>(w)) << "measure" << std::right << std::setw(12)
      << "truth" << std::setw(16) << "cp(w)" << std::setw(10) << "failures" << '\n';
  for (const auto& mc : r.measures) {
    char truth[32];
    std::snprintf(truth, sizeof truth, "%.4f", mc.truth);
    out << std::left << std::setw(static_cast<int>(w)) << mc.measure.label() << std::right
        << std::setw(12) << truth << std::setw(16) << coverage_cell(mc.coverage, mc.mean_width)
        << std::setw(10) << mc.failures << '\n';
  }
  return out.str();
}

Column read_csv_column(const std::string& path, const std::string& column, std::size_t min_rows)
{
  std::ifstream in(path);
  if (!in)
    throw data_error(path, "cannot open file");

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty())
      continue;
    rows.push_back(split_fields(line));
  }
  if (rows.empty())
    throw data_error(path, "file is empty");

  bool header = false;
  for (const auto& f : rows.front()) {
    double v;
    header = header || !parse_number(f, v);
  }

  Column col;
  std::size_t index = 0;
  if (header) {
    const auto& names = rows.front();
    auto it = std::find(names.begin(), names.end(), column);
    if (it != names.end()) {
      index = static_cast<std::size_t>(it - names.begin());
    } else if (all_digits(column)) {
      index = std::stoul(column);
      if (index < 1 || index > names.size())
        throw data_error(path, "column index " + column + " out of range 1.." +
                                 std::to_string(names.size()));
      --index;
    } else {
      throw data_error(path, "no column named '" + column + "'");
    }
    col.name = names[index];
  } else {
    if (!all_digits(column))
      throw data_error(path, "no header line, so column '" + column + "' cannot be found by name");
    index = std::stoul(column);
    if (index < 1 || index > rows.front().size())
      throw data_error(path, "column index " + column + " out of range 1.." +
                               std::to_string(rows.front().size()));
    --index;
    col.name = "column " + column;
  }

  for (std::size_t r = header ? 1 : 0; r < rows.size(); ++r) {
    double v;
    if (index < rows[r].size() && parse_number(rows[r][index], v) && std::isfinite(v))
      col.values.push_back(v);
    else
      ++col.dropped;
  }
  if (col.values.size() < min_rows)
    throw data_error(path, "column '" + col.name + "' has " + std::to_string(col.values.size()) +
                             " usable values; at least " + std::to_string(min_rows) + " required");
  return col;
}

} // namespace skewkit::io
