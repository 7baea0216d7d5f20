#include "skewkit/skewness.hpp"

#include "skewkit/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace skewkit {

namespace {

void check_lower_p(double p)
{
  if (!(p > 0.0 && p < 0.5))
    throw Error(ErrorCode::invalid_argument,
                "pointwise measures need 0 < p < 0.5, got " + std::to_string(p));
}

void check_J(int J)
{
  if (J < 2)
    throw Error(ErrorCode::invalid_argument, "AUC measures need J >= 2");
}

std::string shortest(double v)
{
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string trim_lower(std::string_view in)
{
  std::string out;
  for (char c : in)
    if (!std::isspace(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

std::vector<double> layout_probabilities(const std::vector<double>& lower)
{
  std::vector<double> probs;
  probs.reserve(2 * lower.size() + 1);
  probs.insert(probs.end(), lower.begin(), lower.end());
  probs.push_back(0.5);
  for (auto it = lower.rbegin(); it != lower.rend(); ++it)
    probs.push_back(1.0 - *it);
  return probs;
}

void check_lower_probs(std::span<const double> lower)
{
  if (lower.empty())
    throw Error(ErrorCode::invalid_argument, "quantile grid needs at least one probability");
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!(lower[j] > 0.0 && lower[j] < 0.5))
      throw Error(ErrorCode::invalid_argument, "grid probabilities must lie in (0, 0.5)");
    if (j > 0 && !(lower[j] > lower[j - 1]))
      throw Error(ErrorCode::invalid_argument, "grid probabilities must be strictly increasing");
  }
}

QuantileGrid build_from_sample(const SortedSample& s,
                               std::vector<double> lower,
                               const BandwidthRule& rule,
                               bool with_densities,
                               int J)
{
  check_lower_probs(lower);
  const auto probs = layout_probabilities(lower);
  std::vector<double> xhat(probs.size());
  std::vector<double> ghat;
  for (std::size_t i = 0; i < probs.size(); ++i)
    xhat[i] = quantile_type8(s, probs[i]);
  if (with_densities) {
    ghat.resize(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
      try {
        ghat[i] = quantile_density_estimate(s, probs[i], rule);
      } catch (const Error& e) {
        std::ostringstream ctx;
        ctx << "grid point " << i << " (p=" << probs[i] << ")";
        throw e.with_context(ctx.str());
      }
    }
  }
  return QuantileGrid(std::move(lower), std::move(xhat), std::move(ghat), s.size(), J);
}

QuantileGrid build_from_distribution(const Distribution& d, std::vector<double> lower, int J)
{
  check_lower_probs(lower);
  const auto probs = layout_probabilities(lower);
  std::vector<double> xhat(probs.size());
  std::vector<double> ghat(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    xhat[i] = d.quantile(probs[i]);
    ghat[i] = d.quantile_density(probs[i]);
  }
  return QuantileGrid(std::move(lower), std::move(xhat), std::move(ghat), 0, J);
}

} // namespace

// --- SkewMeasure -----------------------------------------------------------

SkewMeasure SkewMeasure::gamma(double p)
{
  check_lower_p(p);
  return { MeasureKind::gamma, p, Direction::right, default_grid_points };
}

SkewMeasure SkewMeasure::lambda(double p, Direction dir)
{
  check_lower_p(p);
  return { MeasureKind::lambda, p, dir, default_grid_points };
}

SkewMeasure SkewMeasure::gamma_star(double p)
{
  check_lower_p(p);
  return { MeasureKind::gamma_star, p, Direction::right, default_grid_points };
}

SkewMeasure SkewMeasure::lambda_star(double p, Direction dir)
{
  check_lower_p(p);
  return { MeasureKind::lambda_star, p, dir, default_grid_points };
}

SkewMeasure SkewMeasure::auc_gamma(int J)
{
  check_J(J);
  return { MeasureKind::auc_gamma, 0.0, Direction::right, J };
}

SkewMeasure SkewMeasure::auc_lambda(Direction dir, int J)
{
  check_J(J);
  return { MeasureKind::auc_lambda, 0.0, dir, J };
}

SkewMeasure SkewMeasure::auc_gamma_star(int J)
{
  check_J(J);
  return { MeasureKind::auc_gamma_star, 0.0, Direction::right, J };
}

SkewMeasure SkewMeasure::auc_lambda_star(Direction dir, int J)
{
  check_J(J);
  return { MeasureKind::auc_lambda_star, 0.0, dir, J };
}

SkewMeasure SkewMeasure::b3()
{
  return { MeasureKind::b3, 0.0, Direction::right, 0 };
}

bool SkewMeasure::is_pointwise() const
{
  return kind == MeasureKind::gamma || kind == MeasureKind::lambda ||
         kind == MeasureKind::gamma_star || kind == MeasureKind::lambda_star;
}

bool SkewMeasure::is_auc() const
{
  return kind == MeasureKind::auc_gamma || kind == MeasureKind::auc_lambda ||
         kind == MeasureKind::auc_gamma_star || kind == MeasureKind::auc_lambda_star;
}

bool SkewMeasure::is_weighted() const
{
  return kind == MeasureKind::gamma_star || kind == MeasureKind::lambda_star ||
         kind == MeasureKind::auc_gamma_star || kind == MeasureKind::auc_lambda_star;
}

bool SkewMeasure::uses_direction() const
{
  return family() == RatioFamily::lambda && kind != MeasureKind::b3;
}

RatioFamily SkewMeasure::family() const
{
  switch (kind) {
    case MeasureKind::lambda:
    case MeasureKind::lambda_star:
    case MeasureKind::auc_lambda:
    case MeasureKind::auc_lambda_star:
      return RatioFamily::lambda;
    default:
      return RatioFamily::gamma;
  }
}

std::string SkewMeasure::label() const
{
  std::string base;
  switch (kind) {
    case MeasureKind::gamma: base = "gamma@" + shortest(p); break;
    case MeasureKind::lambda: base = "lambda@" + shortest(p); break;
    case MeasureKind::gamma_star: base = "gamma_star@" + shortest(p); break;
    case MeasureKind::lambda_star: base = "lambda_star@" + shortest(p); break;
    case MeasureKind::auc_gamma: base = "auc_gamma"; break;
    case MeasureKind::auc_lambda: base = "auc_lambda"; break;
    case MeasureKind::auc_gamma_star: base = "auc_gamma_star"; break;
    case MeasureKind::auc_lambda_star: base = "auc_lambda_star"; break;
    case MeasureKind::b3: base = "b3"; break;
  }
  if (uses_direction() && direction == Direction::left)
    base += ":left";
  return base;
}

SkewMeasure SkewMeasure::parse(std::string_view token, Direction dir, int J)
{
  std::string t = trim_lower(token);
  if (const auto colon = t.find(':'); colon != std::string::npos) {
    const std::string suffix = t.substr(colon + 1);
    if (suffix == "left")
      dir = Direction::left;
    else if (suffix == "right")
      dir = Direction::right;
    else
      throw Error(ErrorCode::invalid_argument, "unknown direction suffix ':" + suffix + "'");
    t.resize(colon);
  }

  const auto at = t.find('@');
  const std::string head = t.substr(0, at);
  if (at != std::string::npos) {
    const std::string num = t.substr(at + 1);
    char* end = nullptr;
    const double p = std::strtod(num.c_str(), &end);
    if (num.empty() || end != num.c_str() + num.size())
      throw Error(ErrorCode::invalid_argument, "bad probability in measure '" + t + "'");
    if (head == "gamma")
      return gamma(p);
    if (head == "lambda")
      return lambda(p, dir);
    if (head == "gamma_star")
      return gamma_star(p);
    if (head == "lambda_star")
      return lambda_star(p, dir);
    throw Error(ErrorCode::invalid_argument, "measure '" + head + "' does not take @p");
  }
  if (head == "auc_gamma")
    return auc_gamma(J);
  if (head == "auc_lambda")
    return auc_lambda(dir, J);
  if (head == "auc_gamma_star")
    return auc_gamma_star(J);
  if (head == "auc_lambda_star")
    return auc_lambda_star(dir, J);
  if (head == "b3")
    return b3();
  if (head == "gamma" || head == "lambda" || head == "gamma_star" || head == "lambda_star")
    throw Error(ErrorCode::invalid_argument, "measure '" + head + "' needs @p, e.g. " + head + "@0.25");
  throw Error(ErrorCode::invalid_argument, "unknown measure '" + std::string(token) + "'");
}

std::vector<SkewMeasure> parse_measure_list(std::string_view text, Direction dir, int J)
{
  std::vector<SkewMeasure> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto tok = trim_lower(text.substr(start, comma == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : comma - start));
    if (tok == "all") {
      for (double p : { 0.05, 0.1, 0.15, 0.2, 0.25 })
        out.push_back(SkewMeasure::gamma(p));
      for (double p : { 0.05, 0.1, 0.15, 0.2, 0.25 })
        out.push_back(SkewMeasure::lambda(p, dir));
      out.push_back(SkewMeasure::auc_gamma(J));
      out.push_back(SkewMeasure::auc_lambda(dir, J));
      out.push_back(SkewMeasure::auc_gamma_star(J));
      out.push_back(SkewMeasure::auc_lambda_star(dir, J));
      out.push_back(SkewMeasure::b3());
    } else if (!tok.empty()) {
      out.push_back(SkewMeasure::parse(tok, dir, J));
    }
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  if (out.empty())
    throw Error(ErrorCode::invalid_argument, "no measures given");
  return out;
}

std::vector<double> midpoint_grid(int J)
{
  if (J < 1)
    throw Error(ErrorCode::invalid_argument, "grid needs J >= 1");
  std::vector<double> p(static_cast<std::size_t>(J));
  for (int j = 1; j <= J; ++j)
    p[static_cast<std::size_t>(j - 1)] = 0.5 * (j - 0.5) / J;
  return p;
}

// --- QuantileGrid ----------------------------------------------------------

QuantileGrid::QuantileGrid(std::vector<double> lower_probs,
                           std::vector<double> xhat,
                           std::vector<double> ghat,
                           std::size_t n,
                           int midpoint_J)
  : lower_(std::move(lower_probs))
  , xhat_(std::move(xhat))
  , ghat_(std::move(ghat))
  , n_(n)
  , J_(midpoint_J)
{
  check_lower_probs(lower_);
  probs_ = layout_probabilities(lower_);
  if (xhat_.size() != probs_.size())
    throw Error(ErrorCode::invalid_argument, "quantile grid: xhat has the wrong length");
  if (!ghat_.empty() && ghat_.size() != probs_.size())
    throw Error(ErrorCode::invalid_argument, "quantile grid: ghat has the wrong length");
}

QuantileGrid QuantileGrid::build(const SortedSample& s,
                                 int J,
                                 const BandwidthRule& rule,
                                 bool with_densities)
{
  return build_from_sample(s, midpoint_grid(J), rule, with_densities, J);
}

QuantileGrid QuantileGrid::build_at(const SortedSample& s,
                                    std::span<const double> lower_probs,
                                    const BandwidthRule& rule,
                                    bool with_densities)
{
  return build_from_sample(
    s, std::vector<double>(lower_probs.begin(), lower_probs.end()), rule, with_densities, 0);
}

QuantileGrid QuantileGrid::population(const Distribution& d, int J)
{
  return build_from_distribution(d, midpoint_grid(J), J);
}

QuantileGrid QuantileGrid::population_at(const Distribution& d,
                                         std::span<const double> lower_probs)
{
  return build_from_distribution(
    d, std::vector<double>(lower_probs.begin(), lower_probs.end()), 0);
}

std::span<const double> QuantileGrid::ghat() const
{
  if (ghat_.empty())
    throw Error(ErrorCode::contract, "quantile grid was built without quantile densities");
  return ghat_;
}

std::size_t QuantileGrid::lower_index_of(double p) const
{
  const auto it = std::lower_bound(lower_.begin(), lower_.end(), p - 1e-12);
  if (it == lower_.end() || std::fabs(*it - p) > 1e-12)
    throw Error(ErrorCode::contract,
                "probability " + std::to_string(p) + " is not on the quantile grid");
  return static_cast<std::size_t>(it - lower_.begin());
}

double QuantileGrid::xhat_at(double prob) const
{
  const auto it = std::lower_bound(probs_.begin(), probs_.end(), prob - 1e-12);
  if (it == probs_.end() || std::fabs(*it - prob) > 1e-12)
    throw Error(ErrorCode::contract,
                "probability " + std::to_string(prob) + " is not on the quantile grid");
  return xhat_[static_cast<std::size_t>(it - probs_.begin())];
}

double QuantileGrid::ghat_at(double prob) const
{
  const auto g = ghat();
  const auto it = std::lower_bound(probs_.begin(), probs_.end(), prob - 1e-12);
  if (it == probs_.end() || std::fabs(*it - prob) > 1e-12)
    throw Error(ErrorCode::contract,
                "probability " + std::to_string(prob) + " is not on the quantile grid");
  return g[static_cast<std::size_t>(it - probs_.begin())];
}

// --- components ------------------------------------------------------------

double s_at(const QuantileGrid& g, std::size_t j)
{
  const auto x = g.xhat();
  return x[g.index_upper(j)] + x[g.index_lower(j)] - 2.0 * x[g.index_median()];
}

double r1_at(const QuantileGrid& g, std::size_t j)
{
  const auto x = g.xhat();
  return x[g.index_upper(j)] - x[g.index_lower(j)];
}

double r2_at(const QuantileGrid& g, std::size_t j, Direction dir)
{
  const auto x = g.xhat();
  if (dir == Direction::right)
    return x[g.index_median()] - x[g.index_lower(j)];
  return x[g.index_upper(j)] - x[g.index_median()];
}

double denominator_at(const QuantileGrid& g, std::size_t j, RatioFamily fam, Direction dir)
{
  return fam == RatioFamily::gamma ? r1_at(g, j) : r2_at(g, j, dir);
}

double s_p(const QuantileGrid& g, double p)
{
  return s_at(g, g.lower_index_of(p));
}

double r1_p(const QuantileGrid& g, double p)
{
  return r1_at(g, g.lower_index_of(p));
}

double r2_p(const QuantileGrid& g, double p, Direction dir)
{
  return r2_at(g, g.lower_index_of(p), dir);
}

double ratio_at(const QuantileGrid& g, std::size_t j, RatioFamily fam, Direction dir)
{
  const double r = denominator_at(g, j, fam, dir);
  if (!(r > 0.0)) {
    std::ostringstream msg;
    msg << "degenerate scale at p=" << g.lower_probs()[j]
        << ": interquantile denominator is zero (heavily tied data)";
    throw Error(ErrorCode::degenerate_scale, msg.str());
  }
  return s_at(g, j) / r;
}

double estimate_pointwise(const QuantileGrid& g, const SkewMeasure& m)
{
  if (!m.is_pointwise())
    throw Error(ErrorCode::invalid_argument, m.label() + " is not a pointwise measure");
  const std::size_t j = g.lower_index_of(m.p);
  const double value = ratio_at(g, j, m.family(), m.direction);
  return m.is_weighted() ? m.p * value : value;
}

double estimate_auc(const QuantileGrid& g, const SkewMeasure& m)
{
  if (!m.is_auc())
    throw Error(ErrorCode::invalid_argument, m.label() + " is not an AUC measure");
  if (g.midpoint_J() != m.J)
    throw Error(ErrorCode::contract,
                m.label() + " needs a midpoint grid with J=" + std::to_string(m.J));

  const auto p = g.lower_probs();
  std::vector<double> failing;
  double sum = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double r = denominator_at(g, j, m.family(), m.direction);
    if (!(r > 0.0)) {
      failing.push_back(p[j]);
      continue;
    }
    const double v = s_at(g, j) / r;
    sum += m.is_weighted() ? p[j] * v : v;
  }
  if (!failing.empty()) {
    std::ostringstream msg;
    msg << "degenerate scale for " << m.label() << " at p =";
    for (double f : failing)
      msg << ' ' << f;
    msg << " (heavily tied data)";
    throw Error(ErrorCode::degenerate_scale, msg.str());
  }
  return 0.5 * sum / static_cast<double>(g.size());
}

double estimate(const QuantileGrid& g, const SkewMeasure& m)
{
  if (m.kind == MeasureKind::b3)
    throw Error(ErrorCode::invalid_argument, "b3 is estimated from the sample, not a grid");
  return m.is_auc() ? estimate_auc(g, m) : estimate_pointwise(g, m);
}

double estimate_b3(const SortedSample& s)
{
  const double median = quantile_type8(s, 0.5);
  double mad = 0.0;
  for (double x : s.values())
    mad += std::fabs(x - median);
  mad /= static_cast<double>(s.size());
  if (!(mad > 0.0))
    throw Error(ErrorCode::degenerate_scale,
                "b3: mean absolute deviation about the median is zero (constant sample)");
  return (s.mean() - median) / mad;
}

double estimate(const SortedSample& s, const SkewMeasure& m, const BandwidthRule& rule)
{
  if (m.kind == MeasureKind::b3)
    return estimate_b3(s);
  if (m.is_auc())
    return estimate_auc(QuantileGrid::build(s, m.J, rule, false), m);
  const double p[] = { m.p };
  return estimate_pointwise(QuantileGrid::build_at(s, p, rule, false), m);
}

} // namespace skewkit
