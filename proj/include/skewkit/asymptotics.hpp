#pragma once

#include "skewkit/skewness.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace skewkit {

//! First-order covariance kernel of sample quantiles,
//!   xi(p, q) = Cov(xhat_p, xhat_q) = min(p,q) (1 - max(p,q)) g(p) g(q) / n,
//! over a fixed set of probabilities with precomputed quantile densities.
class XiKernel
{
public:
  //! `probs` strictly increasing in (0,1), `g` strictly positive, n >= 1.
  XiKernel(std::size_t n, std::vector<double> probs, std::vector<double> g);

  //! Kernel on the grid's probabilities using its estimated densities.
  static XiKernel from_grid(const QuantileGrid& grid);
  //! Same, with an explicit n (population grids carry n = 0).
  static XiKernel from_grid(const QuantileGrid& grid, std::size_t n);

  std::size_t n() const { return n_; }
  std::span<const double> probabilities() const { return probs_; }
  std::span<const double> densities() const { return g_; }

  //! Position of p; throws ErrorCode::contract when p was not precomputed.
  std::size_t index_of(double p) const;

  double xi_at(std::size_t i, std::size_t j) const
  {
    const std::size_t a = i < j ? i : j;
    const std::size_t b = i < j ? j : i;
    return probs_[a] * (1.0 - probs_[b]) * g_[a] * g_[b] * inv_n_;
  }

private:
  std::size_t n_;
  double inv_n_;
  std::vector<double> probs_;
  std::vector<double> g_;
};

double xi(const XiKernel& k, double p, double q);

// Covariances of the quantile combinations
//   s_p = x_{1-p} + x_p - 2 x_{0.5},  r_{1,p} = x_{1-p} - x_p,
//   r_{2,p} = x_{0.5} - x_p (right) or x_{1-p} - x_{0.5} (left),
// written as signed sums of xi terms.
double cov_s_s(const XiKernel& k, double p, double q);
double cov_s_r1(const XiKernel& k, double p, double q);
double cov_r1_s(const XiKernel& k, double p, double q);
double cov_r1_r1(const XiKernel& k, double p, double q);
double cov_s_r2(const XiKernel& k, double p, double q, Direction dir = Direction::right);
double cov_r2_s(const XiKernel& k, double p, double q, Direction dir = Direction::right);
double cov_r2_r2(const XiKernel& k, double p, double q, Direction dir = Direction::right);

//! n Cov(est_p, est_q) for est = s/r of the given family, plug-in ratios
//! and denominators from `grid`:
//!   n [Cov(s_p,s_q) - e_q Cov(s_p,r_q) - e_p Cov(r_p,s_q) + e_p e_q Cov(r_p,r_q)] / (r_p r_q)
double sigma_cross(const XiKernel& k,
                   const QuantileGrid& grid,
                   double p,
                   double q,
                   RatioFamily fam,
                   Direction dir = Direction::right);

//! n Var(g_p). Evaluated as sigma_cross(p, p), i.e. (A - 2 g C + g^2 B) / r^2,
//! which stays finite when s_p = 0.
double sigma1_sq(const XiKernel& k, const QuantileGrid& grid, double p);

//! n Var(l_p).
double sigma2_sq(const XiKernel& k,
                 const QuantileGrid& grid,
                 double p,
                 Direction dir = Direction::right);

//! n Var of the midpoint-rule AUC estimate on `grid`:
//!   (0.5/J)^2 sum_j sum_k w_j w_k sigma_cross(p_j, p_k), w = p for weighted.
//! Evaluated as the quadratic form a' Xi a of the aggregated coefficient
//! vector, O((2J+1)^2).
double auc_variance(const XiKernel& k,
                    const QuantileGrid& grid,
                    RatioFamily fam,
                    bool weighted,
                    Direction dir = Direction::right);

//! Per-observation asymptotic variance for any measure with a standard error.
double asymptotic_variance(const XiKernel& k, const QuantileGrid& grid, const SkewMeasure& m);

} // namespace skewkit
