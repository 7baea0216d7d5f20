#pragma once

#include "skewkit/distributions.hpp"
#include "skewkit/quantiles.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skewkit {

//! Which tail the lambda denominator uses. Right: x_{0.5} - x_p,
//! Left: x_{1-p} - x_{0.5}. Always a user choice.
enum class Direction
{
  right,
  left
};

//! Denominator family: gamma uses R_1 = x_{1-p} - x_p, lambda uses R_2.
enum class RatioFamily
{
  gamma,
  lambda
};

enum class MeasureKind
{
  gamma,
  lambda,
  gamma_star,
  lambda_star,
  auc_gamma,
  auc_lambda,
  auc_gamma_star,
  auc_lambda_star,
  b3
};

inline constexpr int default_grid_points = 100;

struct SkewMeasure
{
  MeasureKind kind = MeasureKind::gamma;
  double p = 0.25;                     // pointwise kinds only
  Direction direction = Direction::right; // lambda kinds only
  int J = default_grid_points;         // AUC kinds only

  static SkewMeasure gamma(double p);
  static SkewMeasure lambda(double p, Direction dir = Direction::right);
  static SkewMeasure gamma_star(double p);
  static SkewMeasure lambda_star(double p, Direction dir = Direction::right);
  static SkewMeasure auc_gamma(int J = default_grid_points);
  static SkewMeasure auc_lambda(Direction dir = Direction::right, int J = default_grid_points);
  static SkewMeasure auc_gamma_star(int J = default_grid_points);
  static SkewMeasure auc_lambda_star(Direction dir = Direction::right,
                                     int J = default_grid_points);
  static SkewMeasure b3();

  bool is_pointwise() const;
  bool is_auc() const;
  bool is_weighted() const;
  bool uses_direction() const;
  RatioFamily family() const;

  //! Grammar form: "gamma@0.25", "lambda_star@0.1", "auc_gamma", "b3".
  std::string label() const;

  //! Parses one token of the measure grammar.
  static SkewMeasure parse(std::string_view token,
                           Direction dir = Direction::right,
                           int J = default_grid_points);

  friend bool operator==(const SkewMeasure&, const SkewMeasure&) = default;
};

//! Comma-separated measure list; "all" expands to gamma and lambda at
//! p = 0.05..0.25, the four AUCs and b3.
std::vector<SkewMeasure> parse_measure_list(std::string_view text,
                                            Direction dir = Direction::right,
                                            int J = default_grid_points);

//! Midpoints p_j = 0.5 (j - 1/2) / J, j = 1..J.
std::vector<double> midpoint_grid(int J);

//! Quantile (and quantile-density) values at p, 1 - p for every lower
//! probability p plus the median, each computed exactly once.
//!
//! Probabilities are stored ascending: the m lower points, 0.5, then the
//! mirrored upper points, so index_lower(j) = j and index_upper(j) = 2m - j.
class QuantileGrid
{
public:
  //! Midpoint grid for AUC measures (J >= 1).
  static QuantileGrid build(const SortedSample& s,
                            int J,
                            const BandwidthRule& rule = BandwidthRule::standard(),
                            bool with_densities = true);

  //! Grid at arbitrary lower probabilities in (0, 0.5), strictly increasing.
  static QuantileGrid build_at(const SortedSample& s,
                               std::span<const double> lower_probs,
                               const BandwidthRule& rule = BandwidthRule::standard(),
                               bool with_densities = true);

  //! Population grid: exact quantiles and quantile densities.
  static QuantileGrid population(const Distribution& d, int J);
  static QuantileGrid population_at(const Distribution& d, std::span<const double> lower_probs);

  //! Grid from externally supplied values (probabilities as laid out above).
  QuantileGrid(std::vector<double> lower_probs,
               std::vector<double> xhat,
               std::vector<double> ghat,
               std::size_t n,
               int midpoint_J);

  //! Number of lower probabilities m.
  std::size_t size() const { return lower_.size(); }
  //! J when built as a midpoint grid, 0 otherwise.
  int midpoint_J() const { return J_; }
  //! Sample size behind the estimates (0 for population grids).
  std::size_t n() const { return n_; }
  bool has_densities() const { return !ghat_.empty(); }

  std::span<const double> lower_probs() const { return lower_; }
  std::span<const double> probabilities() const { return probs_; }
  std::span<const double> xhat() const { return xhat_; }
  std::span<const double> ghat() const;

  std::size_t index_lower(std::size_t j) const { return j; }
  std::size_t index_median() const { return lower_.size(); }
  std::size_t index_upper(std::size_t j) const { return 2 * lower_.size() - j; }

  //! Position j of lower probability p; throws ErrorCode::contract if absent.
  std::size_t lower_index_of(double p) const;
  double xhat_at(double prob) const;
  double ghat_at(double prob) const;

private:
  std::vector<double> lower_;
  std::vector<double> probs_;
  std::vector<double> xhat_;
  std::vector<double> ghat_;
  std::size_t n_ = 0;
  int J_ = 0;
};

// Components at lower probability p (must be a grid probability).
double s_p(const QuantileGrid& grid, double p);
double r1_p(const QuantileGrid& grid, double p);
double r2_p(const QuantileGrid& grid, double p, Direction dir = Direction::right);

// Same, by lower index j.
double s_at(const QuantileGrid& grid, std::size_t j);
double r1_at(const QuantileGrid& grid, std::size_t j);
double r2_at(const QuantileGrid& grid, std::size_t j, Direction dir);
//! R_1 or R_2 depending on the family.
double denominator_at(const QuantileGrid& grid, std::size_t j, RatioFamily fam, Direction dir);

//! Unweighted ratio S/R at lower index j; degenerate-scale error when R == 0.
double ratio_at(const QuantileGrid& grid, std::size_t j, RatioFamily fam, Direction dir);

//! gamma_p, lambda_p and their p-weighted forms.
double estimate_pointwise(const QuantileGrid& grid, const SkewMeasure& m);

//! (0.5 / J) sum_j w_j ratio(p_j), the midpoint rule for the integral over
//! p in [0, 0.5]; w_j = p_j for starred kinds, 1 otherwise.
double estimate_auc(const QuantileGrid& grid, const SkewMeasure& m);

//! Dispatches to estimate_pointwise / estimate_auc (not b3).
double estimate(const QuantileGrid& grid, const SkewMeasure& m);

//! Mean skew over p ~ Uniform(0, 0.5), reported as AUC / 2.
inline double mean_skew(double auc) { return 0.5 * auc; }

//! (mean - median) / mean |X - median|, Type-8 median.
double estimate_b3(const SortedSample& s);

//! Point estimate for any measure straight from a sample.
double estimate(const SortedSample& s,
                const SkewMeasure& m,
                const BandwidthRule& rule = BandwidthRule::standard());

} // namespace skewkit
