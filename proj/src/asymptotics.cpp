#include "skewkit/asymptotics.hpp"

#include "skewkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skewkit {

namespace {

// Kernel positions of x_p, x_{0.5} and x_{1-p}.
struct Taps
{
  std::size_t lo, mid, hi;
};

Taps taps(const XiKernel& k, double p)
{
  return { k.index_of(p), k.index_of(0.5), k.index_of(1.0 - p) };
}

double cov_ss(const XiKernel& k, Taps a, Taps b)
{
  return k.xi_at(a.hi, b.hi) + k.xi_at(a.hi, b.lo) + k.xi_at(a.lo, b.hi) + k.xi_at(a.lo, b.lo) -
         2.0 * k.xi_at(a.hi, a.mid) - 2.0 * k.xi_at(a.lo, a.mid) - 2.0 * k.xi_at(a.mid, b.hi) -
         2.0 * k.xi_at(a.mid, b.lo) + 4.0 * k.xi_at(a.mid, a.mid);
}

double cov_sr1(const XiKernel& k, Taps a, Taps b)
{
  return k.xi_at(a.hi, b.hi) - k.xi_at(a.hi, b.lo) + k.xi_at(a.lo, b.hi) - k.xi_at(a.lo, b.lo) -
         2.0 * k.xi_at(a.mid, b.hi) + 2.0 * k.xi_at(a.mid, b.lo);
}

double cov_r1s(const XiKernel& k, Taps a, Taps b)
{
  return k.xi_at(a.hi, b.hi) + k.xi_at(a.hi, b.lo) - 2.0 * k.xi_at(a.hi, a.mid) -
         k.xi_at(a.lo, b.hi) - k.xi_at(a.lo, b.lo) + 2.0 * k.xi_at(a.lo, a.mid);
}

double cov_r1r1(const XiKernel& k, Taps a, Taps b)
{
  return k.xi_at(a.hi, b.hi) - k.xi_at(a.hi, b.lo) - k.xi_at(a.lo, b.hi) + k.xi_at(a.lo, b.lo);
}

double cov_sr2(const XiKernel& k, Taps a, Taps b, Direction dir)
{
  const double v_mid = k.xi_at(a.mid, a.mid);
  if (dir == Direction::right)
    return k.xi_at(a.hi, a.mid) - k.xi_at(a.hi, b.lo) + k.xi_at(a.lo, a.mid) -
           k.xi_at(a.lo, b.lo) + 2.0 * k.xi_at(a.mid, b.lo) - 2.0 * v_mid;
  return k.xi_at(a.hi, b.hi) - k.xi_at(a.hi, a.mid) + k.xi_at(a.lo, b.hi) -
         k.xi_at(a.lo, a.mid) - 2.0 * k.xi_at(a.mid, b.hi) + 2.0 * v_mid;
}

double cov_r2s(const XiKernel& k, Taps a, Taps b, Direction dir)
{
  const double v_mid = k.xi_at(a.mid, a.mid);
  if (dir == Direction::right)
    return k.xi_at(a.mid, b.hi) + k.xi_at(a.mid, b.lo) - k.xi_at(a.lo, b.hi) -
           k.xi_at(a.lo, b.lo) + 2.0 * k.xi_at(a.lo, a.mid) - 2.0 * v_mid;
  return k.xi_at(a.hi, b.hi) + k.xi_at(a.hi, b.lo) - 2.0 * k.xi_at(a.hi, a.mid) -
         k.xi_at(a.mid, b.hi) - k.xi_at(a.mid, b.lo) + 2.0 * v_mid;
}

double cov_r2r2(const XiKernel& k, Taps a, Taps b, Direction dir)
{
  const double v_mid = k.xi_at(a.mid, a.mid);
  if (dir == Direction::right)
    return k.xi_at(a.lo, b.lo) - k.xi_at(a.mid, b.lo) - k.xi_at(a.lo, a.mid) + v_mid;
  return k.xi_at(a.hi, b.hi) - k.xi_at(a.hi, a.mid) - k.xi_at(a.mid, b.hi) + v_mid;
}

// Plug-in ratio and positive denominator at lower index j.
struct PlugIn
{
  double ratio, denom;
};

PlugIn plug_in(const QuantileGrid& grid, std::size_t j, RatioFamily fam, Direction dir)
{
  const double r = denominator_at(grid, j, fam, dir);
  if (!(r > 0.0)) {
    std::ostringstream msg;
    msg << "degenerate scale at p=" << grid.lower_probs()[j]
        << ": zero interquantile denominator, no standard error";
    throw Error(ErrorCode::degenerate_scale, msg.str());
  }
  return { s_at(grid, j) / r, r };
}

} // namespace

XiKernel::XiKernel(std::size_t n, std::vector<double> probs, std::vector<double> g)
  : n_(n)
  , inv_n_(n > 0 ? 1.0 / static_cast<double>(n) : 0.0)
  , probs_(std::move(probs))
  , g_(std::move(g))
{
  if (n_ == 0)
    throw Error(ErrorCode::invalid_argument, "xi kernel needs n >= 1");
  if (probs_.size() != g_.size() || probs_.empty())
    throw Error(ErrorCode::invalid_argument, "xi kernel: probabilities and densities differ in length");
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] > 0.0 && probs_[i] < 1.0) || (i > 0 && !(probs_[i] > probs_[i - 1])))
      throw Error(ErrorCode::invalid_argument,
                  "xi kernel: probabilities must be strictly increasing in (0,1)");
    if (!(g_[i] > 0.0) || !std::isfinite(g_[i]))
      throw Error(ErrorCode::invalid_argument, "xi kernel: quantile densities must be positive");
  }
}

XiKernel XiKernel::from_grid(const QuantileGrid& grid)
{
  return from_grid(grid, grid.n());
}

XiKernel XiKernel::from_grid(const QuantileGrid& grid, std::size_t n)
{
  const auto probs = grid.probabilities();
  const auto g = grid.ghat();
  return XiKernel(n,
                  std::vector<double>(probs.begin(), probs.end()),
                  std::vector<double>(g.begin(), g.end()));
}

std::size_t XiKernel::index_of(double p) const
{
  const auto it = std::lower_bound(probs_.begin(), probs_.end(), p - 1e-12);
  if (it == probs_.end() || std::fabs(*it - p) > 1e-12)
    throw Error(ErrorCode::contract,
                "xi kernel has no quantile density at p=" + std::to_string(p));
  return static_cast<std::size_t>(it - probs_.begin());
}

double xi(const XiKernel& k, double p, double q)
{
  return k.xi_at(k.index_of(p), k.index_of(q));
}

double cov_s_s(const XiKernel& k, double p, double q)
{
  return cov_ss(k, taps(k, p), taps(k, q));
}

double cov_s_r1(const XiKernel& k, double p, double q)
{
  return cov_sr1(k, taps(k, p), taps(k, q));
}

double cov_r1_s(const XiKernel& k, double p, double q)
{
  return cov_r1s(k, taps(k, p), taps(k, q));
}

double cov_r1_r1(const XiKernel& k, double p, double q)
{
  return cov_r1r1(k, taps(k, p), taps(k, q));
}

double cov_s_r2(const XiKernel& k, double p, double q, Direction dir)
{
  return cov_sr2(k, taps(k, p), taps(k, q), dir);
}

double cov_r2_s(const XiKernel& k, double p, double q, Direction dir)
{
  return cov_r2s(k, taps(k, p), taps(k, q), dir);
}

double cov_r2_r2(const XiKernel& k, double p, double q, Direction dir)
{
  return cov_r2r2(k, taps(k, p), taps(k, q), dir);
}

double sigma_cross(const XiKernel& k,
                   const QuantileGrid& grid,
                   double p,
                   double q,
                   RatioFamily fam,
                   Direction dir)
{
  const auto a = plug_in(grid, grid.lower_index_of(p), fam, dir);
  const auto b = plug_in(grid, grid.lower_index_of(q), fam, dir);
  const Taps tp = taps(k, p);
  const Taps tq = taps(k, q);

  double bracket = 0.0;
  if (fam == RatioFamily::gamma)
    bracket = cov_ss(k, tp, tq) - b.ratio * cov_sr1(k, tp, tq) - a.ratio * cov_r1s(k, tp, tq) +
              a.ratio * b.ratio * cov_r1r1(k, tp, tq);
  else
    bracket = cov_ss(k, tp, tq) - b.ratio * cov_sr2(k, tp, tq, dir) -
              a.ratio * cov_r2s(k, tp, tq, dir) + a.ratio * b.ratio * cov_r2r2(k, tp, tq, dir);
  return static_cast<double>(k.n()) * bracket / (a.denom * b.denom);
}

double sigma1_sq(const XiKernel& k, const QuantileGrid& grid, double p)
{
  return sigma_cross(k, grid, p, p, RatioFamily::gamma);
}

double sigma2_sq(const XiKernel& k, const QuantileGrid& grid, double p, Direction dir)
{
  return sigma_cross(k, grid, p, p, RatioFamily::lambda, dir);
}

double auc_variance(const XiKernel& k,
                    const QuantileGrid& grid,
                    RatioFamily fam,
                    bool weighted,
                    Direction dir)
{
  const std::size_t m = grid.size();
  const auto lower = grid.lower_probs();
  const double scale = 0.5 / static_cast<double>(m);

  // a = scale * sum_j w_j c_j, with c_j the coefficients of
  // (s_j - e_j r_j) / r_j on x_{p_j}, x_{0.5}, x_{1-p_j}.
  std::vector<double> a(k.probabilities().size(), 0.0);
  const std::size_t mid = k.index_of(0.5);
  std::vector<double> failing;
  for (std::size_t j = 0; j < m; ++j) {
    const double r = denominator_at(grid, j, fam, dir);
    if (!(r > 0.0)) {
      failing.push_back(lower[j]);
      continue;
    }
    const double e = s_at(grid, j) / r;
    const double w = scale * (weighted ? lower[j] : 1.0) / r;
    double c_lo = 0.0, c_mid = 0.0, c_hi = 0.0;
    if (fam == RatioFamily::gamma) {
      c_hi = 1.0 - e;
      c_lo = 1.0 + e;
      c_mid = -2.0;
    } else if (dir == Direction::right) {
      c_hi = 1.0;
      c_lo = 1.0 + e;
      c_mid = -2.0 - e;
    } else {
      c_hi = 1.0 - e;
      c_lo = 1.0;
      c_mid = -2.0 + e;
    }
    a[k.index_of(lower[j])] += w * c_lo;
    a[mid] += w * c_mid;
    a[k.index_of(1.0 - lower[j])] += w * c_hi;
  }
  if (!failing.empty()) {
    std::ostringstream msg;
    msg << "degenerate scale at p =";
    for (double f : failing)
      msg << ' ' << f;
    msg << ": zero interquantile denominators, no AUC standard error";
    throw Error(ErrorCode::degenerate_scale, msg.str());
  }

  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0)
      continue;
    double row = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
      row += k.xi_at(i, j) * a[j];
    total += a[i] * row;
  }
  total *= static_cast<double>(k.n());
  if (!(total >= 0.0)) {
    std::ostringstream msg;
    msg << "AUC variance evaluated to " << total << " (expected >= 0)";
    throw Error(ErrorCode::computation, msg.str());
  }
  return total;
}

double asymptotic_variance(const XiKernel& k, const QuantileGrid& grid, const SkewMeasure& m)
{
  if (m.kind == MeasureKind::b3)
    throw Error(ErrorCode::unsupported, "b3 has no standard error; point estimate only");
  if (m.is_auc()) {
    if (grid.midpoint_J() != m.J)
      throw Error(ErrorCode::contract,
                  m.label() + " needs a midpoint grid with J=" + std::to_string(m.J));
    return auc_variance(k, grid, m.family(), m.is_weighted(), m.direction);
  }
  const double v = sigma_cross(k, grid, m.p, m.p, m.family(), m.direction);
  return m.is_weighted() ? m.p * m.p * v : v;
}

} // namespace skewkit
