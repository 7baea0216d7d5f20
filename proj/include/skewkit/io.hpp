#pragma once

#include "skewkit/inference.hpp"
#include "skewkit/simulation.hpp"
#include "skewkit/skewness.hpp"

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace skewkit::io {

using json = nlohmann::json;

// Measures serialize as {"measure": label} plus "J" for AUC kinds.
void put_measure(json& j, const SkewMeasure& m);
SkewMeasure get_measure(const json& j);

struct PopulationValue
{
  SkewMeasure measure;
  double value = 0.0;
};

struct CurvePoint
{
  double p = 0.0;
  double value = 0.0;
};

json to_json(const PopulationValue& v);
json to_json(const IntervalEstimate& e);
json to_json(const DifferenceEstimate& d);
json to_json(const SimConfig& cfg);
//! Deterministic: wall time and thread count are left out.
json to_json(const CoverageReport& r);

PopulationValue population_value_from_json(const json& j);
IntervalEstimate interval_from_json(const json& j);
DifferenceEstimate difference_from_json(const json& j);
CoverageReport coverage_report_from_json(const json& j);

//! Simulation config document:
//!   {"dist": "lognormal(0,1)", "n": 200, "trials": 10000, "level": 0.95,
//!    "measures": ["auc_gamma", "lambda@0.05"], "seed": 42, "threads": "auto"}
//! Optional "J" and "direction" apply to every listed measure.
SimConfig sim_config_from_json(const json& j);

//! "0.961(1.98)": coverage to 3 decimals, width to 2.
std::string coverage_cell(double coverage, double width);

//! Aligned table, one row per measure: truth, cp(w), failures.
std::string coverage_table(const CoverageReport& r);

//! Result of reading one numeric column from a CSV file.
struct Column
{
  std::vector<double> values;
  std::size_t dropped = 0; // rows whose field was missing or not finite
  std::string name;        // header name, or "column <k>" without a header
};

//! Reads `column` (header name, or 1-based index) from a comma-separated
//! file. The first line is a header when any of its fields is not a number.
//! Throws ErrorCode::data naming the file on unreadable input, an unknown
//! column, or fewer than `min_rows` usable values.
Column read_csv_column(const std::string& path, const std::string& column,
                       std::size_t min_rows = 10);

} // namespace skewkit::io
