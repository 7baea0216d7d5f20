#include "skewkit/distributions.hpp"

#include "skewkit/error.hpp"
#include "skewkit/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace skewkit {

namespace {

template<class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double inf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what)
{
  if (!(v > 0.0) || !std::isfinite(v))
    throw Error(ErrorCode::invalid_argument,
                std::string(what) + " must be a finite positive number");
}

void require_probability(double p)
{
  if (!(p > 0.0 && p < 1.0))
    throw Error(ErrorCode::domain,
                "probability must lie strictly inside (0,1), got " + std::to_string(p));
}

// Gamma(shape, unit scale) building blocks; chi-square reuses them.
double gamma_density(double k, double x)
{
  if (x < 0.0)
    return 0.0;
  if (x == 0.0)
    return k < 1.0 ? inf : (k == 1.0 ? 1.0 : 0.0);
  return std::exp((k - 1.0) * std::log(x) - x - std::lgamma(k));
}

double gamma_cdf(double k, double x)
{
  return x <= 0.0 ? 0.0 : special::gamma_p(k, x);
}

double gamma_quantile(double k, double p)
{
  // Wilson-Hilferty start, small-p power law when it goes negative.
  const double z = special::normal_quantile(p);
  const double c = 1.0 / (9.0 * k);
  double guess = k * std::pow(1.0 - c + z * std::sqrt(c), 3.0);
  if (!(guess > 0.0))
    guess = std::exp((std::log(p) + std::lgamma(k + 1.0)) / k);
  return special::invert_cdf([k](double x) { return gamma_cdf(k, x); },
                             [k](double x) { return gamma_density(k, x); },
                             p,
                             0.0,
                             inf,
                             guess);
}

double beta_density(double a, double b, double x)
{
  if (x < 0.0 || x > 1.0)
    return 0.0;
  if (x == 0.0)
    return a < 1.0 ? inf : (a == 1.0 ? b : 0.0);
  if (x == 1.0)
    return b < 1.0 ? inf : (b == 1.0 ? a : 0.0);
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
                  special::log_beta(a, b));
}

double beta_cdf(double a, double b, double x)
{
  if (x <= 0.0)
    return 0.0;
  if (x >= 1.0)
    return 1.0;
  return special::beta_inc(a, b, x);
}

double beta_quantile(double a, double b, double p)
{
  return special::invert_cdf([a, b](double x) { return beta_cdf(a, b, x); },
                             [a, b](double x) { return beta_density(a, b, x); },
                             p,
                             0.0,
                             1.0,
                             a / (a + b));
}

double f_density(double d1, double d2, double x)
{
  if (x <= 0.0)
    return x < 0.0 ? 0.0 : (d1 < 2.0 ? inf : (d1 == 2.0 ? 1.0 : 0.0));
  const double log_f = 0.5 * (d1 * std::log(d1 * x) + d2 * std::log(d2) -
                              (d1 + d2) * std::log(d1 * x + d2)) -
                       std::log(x) - special::log_beta(0.5 * d1, 0.5 * d2);
  return std::exp(log_f);
}

double f_cdf(double d1, double d2, double x)
{
  if (x <= 0.0)
    return 0.0;
  return special::beta_inc(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2));
}

std::string format_number(double v)
{
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

} // namespace

Distribution Distribution::normal(double mu, double sigma)
{
  if (!std::isfinite(mu))
    throw Error(ErrorCode::invalid_argument, "normal mu must be finite");
  require_positive(sigma, "normal sigma");
  return Distribution(family::Normal{ mu, sigma });
}

Distribution Distribution::lognormal(double mu, double sigma)
{
  if (!std::isfinite(mu))
    throw Error(ErrorCode::invalid_argument, "lognormal mu must be finite");
  require_positive(sigma, "lognormal sigma");
  return Distribution(family::LogNormal{ mu, sigma });
}

Distribution Distribution::exponential(double rate)
{
  require_positive(rate, "exponential rate");
  return Distribution(family::Exponential{ rate });
}

Distribution Distribution::chi_square(double df)
{
  require_positive(df, "chi-square df");
  return Distribution(family::ChiSquare{ df });
}

Distribution Distribution::pareto2(double scale, double shape)
{
  require_positive(scale, "pareto2 scale");
  require_positive(shape, "pareto2 shape");
  return Distribution(family::ParetoII{ scale, shape });
}

Distribution Distribution::weibull(double shape)
{
  require_positive(shape, "weibull shape");
  return Distribution(family::Weibull{ shape });
}

Distribution Distribution::gamma(double shape)
{
  require_positive(shape, "gamma shape");
  return Distribution(family::Gamma{ shape });
}

Distribution Distribution::beta(double a, double b)
{
  require_positive(a, "beta a");
  require_positive(b, "beta b");
  return Distribution(family::Beta{ a, b });
}

Distribution Distribution::fisher_f(double d1, double d2)
{
  require_positive(d1, "f d1");
  require_positive(d2, "f d2");
  return Distribution(family::FisherF{ d1, d2 });
}

Distribution Distribution::parse(std::string_view text)
{
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw Error(ErrorCode::invalid_argument,
                "distribution must look like name(params): '" + std::string(text) + "'");
  const std::string head = s.substr(0, open);
  const std::string body = s.substr(open + 1, s.size() - open - 2);

  std::vector<double> args;
  std::size_t start = 0;
  while (start <= body.size() && !body.empty()) {
    const auto comma = body.find(',', start);
    const std::string tok = body.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size())
      throw Error(ErrorCode::invalid_argument,
                  "bad distribution parameter '" + tok + "' in '" + std::string(text) + "'");
    args.push_back(v);
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }

  auto want = [&](std::size_t k) {
    if (args.size() != k)
      throw Error(ErrorCode::invalid_argument,
                  head + " takes " + std::to_string(k) + " parameter(s), got " +
                    std::to_string(args.size()));
  };

  if (head == "normal" || head == "norm" || head == "n") {
    want(2);
    return normal(args[0], args[1]);
  }
  if (head == "lognormal" || head == "lnorm" || head == "ln") {
    want(2);
    return lognormal(args[0], args[1]);
  }
  if (head == "exp" || head == "exponential") {
    want(1);
    return exponential(args[0]);
  }
  if (head == "chisq" || head == "chi2" || head == "chisquare") {
    want(1);
    return chi_square(args[0]);
  }
  if (head == "pareto2" || head == "par" || head == "lomax") {
    want(2);
    return pareto2(args[0], args[1]);
  }
  if (head == "weibull" || head == "wei") {
    want(1);
    return weibull(args[0]);
  }
  if (head == "gamma") {
    want(1);
    return gamma(args[0]);
  }
  if (head == "beta") {
    want(2);
    return beta(args[0], args[1]);
  }
  if (head == "f") {
    want(2);
    return fisher_f(args[0], args[1]);
  }
  throw Error(ErrorCode::invalid_argument, "unknown distribution '" + head + "'");
}

std::string Distribution::name() const
{
  auto fmt = [](const char* n, std::initializer_list<double> ps) {
    std::string out = n;
    out += '(';
    bool first = true;
    for (double p : ps) {
      if (!first)
        out += ',';
      out += format_number(p);
      first = false;
    }
    return out + ')';
  };
  return std::visit(
    overloaded{
      [&](const family::Normal& f) { return fmt("normal", { f.mu, f.sigma }); },
      [&](const family::LogNormal& f) { return fmt("lognormal", { f.mu, f.sigma }); },
      [&](const family::Exponential& f) { return fmt("exp", { f.rate }); },
      [&](const family::ChiSquare& f) { return fmt("chisq", { f.df }); },
      [&](const family::ParetoII& f) { return fmt("pareto2", { f.scale, f.shape }); },
      [&](const family::Weibull& f) { return fmt("weibull", { f.shape }); },
      [&](const family::Gamma& f) { return fmt("gamma", { f.shape }); },
      [&](const family::Beta& f) { return fmt("beta", { f.a, f.b }); },
      [&](const family::FisherF& f) { return fmt("f", { f.d1, f.d2 }); },
    },
    family_);
}

double Distribution::cdf(double x) const
{
  return std::visit(
    overloaded{
      [x](const family::Normal& f) { return special::normal_cdf((x - f.mu) / f.sigma); },
      [x](const family::LogNormal& f) {
        return x <= 0.0 ? 0.0 : special::normal_cdf((std::log(x) - f.mu) / f.sigma);
      },
      [x](const family::Exponential& f) {
        return x <= 0.0 ? 0.0 : -std::expm1(-f.rate * x);
      },
      [x](const family::ChiSquare& f) { return gamma_cdf(0.5 * f.df, 0.5 * x); },
      [x](const family::ParetoII& f) {
        return x <= 0.0 ? 0.0 : -std::expm1(-f.shape * std::log1p(x / f.scale));
      },
      [x](const family::Weibull& f) {
        return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x, f.shape));
      },
      [x](const family::Gamma& f) { return gamma_cdf(f.shape, x); },
      [x](const family::Beta& f) { return beta_cdf(f.a, f.b, x); },
      [x](const family::FisherF& f) { return f_cdf(f.d1, f.d2, x); },
    },
    family_);
}

double Distribution::density(double x) const
{
  return std::visit(
    overloaded{
      [x](const family::Normal& f) {
        return special::normal_pdf((x - f.mu) / f.sigma) / f.sigma;
      },
      [x](const family::LogNormal& f) {
        return x <= 0.0 ? 0.0
                        : special::normal_pdf((std::log(x) - f.mu) / f.sigma) / (f.sigma * x);
      },
      [x](const family::Exponential& f) {
        return x < 0.0 ? 0.0 : f.rate * std::exp(-f.rate * x);
      },
      [x](const family::ChiSquare& f) { return 0.5 * gamma_density(0.5 * f.df, 0.5 * x); },
      [x](const family::ParetoII& f) {
        return x < 0.0 ? 0.0
                       : f.shape / f.scale *
                           std::exp(-(f.shape + 1.0) * std::log1p(x / f.scale));
      },
      [x](const family::Weibull& f) {
        if (x < 0.0)
          return 0.0;
        if (x == 0.0)
          return f.shape < 1.0 ? inf : (f.shape == 1.0 ? 1.0 : 0.0);
        const double xk = std::pow(x, f.shape);
        return f.shape * xk / x * std::exp(-xk);
      },
      [x](const family::Gamma& f) { return gamma_density(f.shape, x); },
      [x](const family::Beta& f) { return beta_density(f.a, f.b, x); },
      [x](const family::FisherF& f) { return f_density(f.d1, f.d2, x); },
    },
    family_);
}

double Distribution::quantile(double p) const
{
  require_probability(p);
  return std::visit(
    overloaded{
      [p](const family::Normal& f) { return f.mu + f.sigma * special::normal_quantile(p); },
      [p](const family::LogNormal& f) {
        return std::exp(f.mu + f.sigma * special::normal_quantile(p));
      },
      [p](const family::Exponential& f) { return -std::log1p(-p) / f.rate; },
      [p](const family::ChiSquare& f) { return 2.0 * gamma_quantile(0.5 * f.df, p); },
      [p](const family::ParetoII& f) {
        return f.scale * std::expm1(-std::log1p(-p) / f.shape);
      },
      [p](const family::Weibull& f) { return std::pow(-std::log1p(-p), 1.0 / f.shape); },
      [p](const family::Gamma& f) { return gamma_quantile(f.shape, p); },
      [p](const family::Beta& f) { return beta_quantile(f.a, f.b, p); },
      [p](const family::FisherF& f) {
        const double y = beta_quantile(0.5 * f.d1, 0.5 * f.d2, p);
        return f.d2 * y / (f.d1 * (1.0 - y));
      },
    },
    family_);
}

double Distribution::quantile_density(double p) const
{
  const double f = density(quantile(p));
  if (!(f > 0.0) || !std::isfinite(f))
    throw Error(ErrorCode::computation,
                "density at the quantile is not a positive finite number for " + name());
  return 1.0 / f;
}

double Distribution::mean() const
{
  return std::visit(
    overloaded{
      [](const family::Normal& f) { return f.mu; },
      [](const family::LogNormal& f) { return std::exp(f.mu + 0.5 * f.sigma * f.sigma); },
      [](const family::Exponential& f) { return 1.0 / f.rate; },
      [](const family::ChiSquare& f) { return f.df; },
      [](const family::ParetoII& f) {
        return f.shape > 1.0 ? f.scale / (f.shape - 1.0) : inf;
      },
      [](const family::Weibull& f) { return std::tgamma(1.0 + 1.0 / f.shape); },
      [](const family::Gamma& f) { return f.shape; },
      [](const family::Beta& f) { return f.a / (f.a + f.b); },
      [](const family::FisherF& f) { return f.d2 > 2.0 ? f.d2 / (f.d2 - 2.0) : inf; },
    },
    family_);
}

bool Distribution::symmetric() const
{
  if (std::holds_alternative<family::Normal>(family_))
    return true;
  if (const auto* b = std::get_if<family::Beta>(&family_))
    return b->a == b->b;
  return false;
}

std::vector<double> sample(const Distribution& d, std::size_t n, Philox4x32& stream)
{
  std::vector<double> out(n);
  for (auto& x : out)
    x = d.quantile(uniform_open01(stream));
  return out;
}

} // namespace skewkit
