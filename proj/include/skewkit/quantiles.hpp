#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace skewkit {

//! Ascending copy of finite data, at least four observations.
class SortedSample
{
public:
  static constexpr std::size_t min_size = 4;

  //! Sorts a copy; rejects non-finite values and samples smaller than min_size.
  explicit SortedSample(std::vector<double> values);

  //! Adopts already-sorted data (checked).
  static SortedSample from_sorted(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  //! 1-based order statistic X_(i).
  double order_stat(std::size_t i) const { return values_[i - 1]; }

  double mean() const;

private:
  struct presorted_tag {};
  SortedSample(std::vector<double> values, presorted_tag);

  std::vector<double> values_;
};

//! Hyndman-Fan Type 8: h = (n + 1/3) p + 1/3, clamped to [1, n], linear
//! interpolation between X_(floor h) and X_(floor h + 1).
double quantile_type8(const SortedSample& s, double p);

struct BandwidthRule
{
  enum class Kind
  {
    binomial_width, // default_bandwidth(n, p)
    fixed
  };

  Kind kind = Kind::binomial_width;
  double value = 0.0; // only for Kind::fixed, 0 < value < 0.5

  static BandwidthRule standard() { return {}; }
  static BandwidthRule fixed_width(double b);
};

//! z_{0.975} sqrt(p(1-p)/n), capped at min(p, 1-p) and floored at 1/n.
double default_bandwidth(std::size_t n, double p);

//! The bandwidth `rule` produces for a sample of size n at p.
double bandwidth(const BandwidthRule& rule, std::size_t n, double p);

//! Kernel estimate of the quantile density g(p) = 1/f(x_p): the derivative
//! of the Epanechnikov-smoothed empirical quantile function,
//!   sum_{i=1}^{n-1} (X_(i+1) - X_(i)) k_b(i/n - p).
//! Throws ErrorCode::quantile_density when the estimate is not positive.
double quantile_density_estimate(const SortedSample& s,
                                 double p,
                                 const BandwidthRule& rule = BandwidthRule::standard());

} // namespace skewkit
