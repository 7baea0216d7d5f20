#include "skewkit/distributions.hpp"
#include "skewkit/error.hpp"
#include "skewkit/inference.hpp"
#include "skewkit/io.hpp"
#include "skewkit/population.hpp"
#include "skewkit/quantiles.hpp"
#include "skewkit/simulation.hpp"
#include "skewkit/skewness.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace skewkit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

SortedSample to_sample(const Array& data)
{
  const auto view = data.unchecked<1>();
  std::vector<double> v(static_cast<std::size_t>(view.shape(0)));
  for (py::ssize_t i = 0; i < view.shape(0); ++i)
    v[static_cast<std::size_t>(i)] = view(i);
  return SortedSample(std::move(v));
}

BandwidthRule rule_for(std::optional<double> b)
{
  return b ? BandwidthRule::fixed_width(*b) : BandwidthRule::standard();
}

SkewMeasure measure_for(const std::string& text, const std::string& direction, int J)
{
  auto m = SkewMeasure::parse(text);
  if (direction == "left")
    m.direction = Direction::left;
  else if (direction != "right")
    throw Error(ErrorCode::invalid_argument, "direction must be 'right' or 'left'");
  if (m.is_auc())
    m.J = J;
  return m;
}

py::dict interval_dict(const IntervalEstimate& e, bool mean_skew)
{
  const auto v = mean_skew ? e.mean_skew() : e;
  py::dict d;
  d["measure"] = v.measure.label();
  d["estimate"] = v.estimate;
  d["se"] = v.se;
  d["lower"] = v.lower;
  d["upper"] = v.upper;
  d["level"] = v.level;
  d["n"] = v.n;
  d["mean_skew"] = mean_skew;
  return d;
}

py::dict difference_dict(const DifferenceEstimate& e)
{
  py::dict d;
  d["measure"] = e.measure.label();
  d["estimate_a"] = e.estimate_a;
  d["estimate_b"] = e.estimate_b;
  d["variance_a"] = e.variance_a;
  d["variance_b"] = e.variance_b;
  d["difference"] = e.difference;
  d["se"] = e.se;
  d["lower"] = e.lower;
  d["upper"] = e.upper;
  d["level"] = e.level;
  d["n_a"] = e.n_a;
  d["n_b"] = e.n_b;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Quantile-based skewness measures and their Wald intervals";

  // Kept alive for the life of the interpreter.
  static PyObject* error_type = PyErr_NewException("skewkit.SkewkitError", PyExc_ValueError, nullptr);
  m.add_object("SkewkitError", py::handle(error_type));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_steal<py::object>(PyObject_CallFunction(error_type, "s", e.what()));
      inst.attr("code") = to_string(e.code());
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  py::class_<Distribution>(m, "Distribution")
    .def(py::init([](const std::string& text) { return Distribution::parse(text); }), py::arg("spec"))
    .def_property_readonly("name", &Distribution::name)
    .def("cdf", &Distribution::cdf)
    .def("density", &Distribution::density)
    .def("quantile", &Distribution::quantile)
    .def("quantile_density", &Distribution::quantile_density)
    .def("mean", &Distribution::mean)
    .def("__repr__", [](const Distribution& d) { return "Distribution('" + d.name() + "')"; });

  m.def("population",
        [](const std::string& dist, const std::string& measure, const std::string& direction, int J) {
          const auto d = Distribution::parse(dist);
          const auto mm = measure_for(measure, direction, J);
          return mm.kind == MeasureKind::b3 ? population_b3(d) : population_measure(d, mm);
        },
        py::arg("dist"), py::arg("measure"), py::arg("direction") = "right", py::arg("J") = 100);

  m.def("estimate",
        [](const Array& data, const std::string& measure, const std::string& direction, int J,
           std::optional<double> bandwidth) {
          return estimate(to_sample(data), measure_for(measure, direction, J), rule_for(bandwidth));
        },
        py::arg("data"), py::arg("measure"), py::arg("direction") = "right", py::arg("J") = 100,
        py::arg("bandwidth") = py::none());

  m.def("interval",
        [](const Array& data, const std::string& measure, double level, const std::string& direction,
           int J, std::optional<double> bandwidth, bool mean_skew) {
          const auto e = interval(to_sample(data), measure_for(measure, direction, J), level,
                                  rule_for(bandwidth));
          return interval_dict(e, mean_skew);
        },
        py::arg("data"), py::arg("measure") = "auc_gamma", py::arg("level") = 0.95,
        py::arg("direction") = "right", py::arg("J") = 100, py::arg("bandwidth") = py::none(),
        py::arg("mean_skew") = false);

  m.def("difference_interval",
        [](const Array& a, const Array& b, const std::string& measure, double level,
           const std::string& direction, int J, std::optional<double> bandwidth) {
          return difference_dict(difference_interval(to_sample(a), to_sample(b),
                                                     measure_for(measure, direction, J), level,
                                                     rule_for(bandwidth)));
        },
        py::arg("a"), py::arg("b"), py::arg("measure") = "auc_gamma", py::arg("level") = 0.95,
        py::arg("direction") = "right", py::arg("J") = 100, py::arg("bandwidth") = py::none());

  m.def("curve",
        [](const std::string& dist, const std::string& family, int points, const std::string& direction) {
          if (family != "gamma" && family != "lambda" && family != "gamma_star" && family != "lambda_star")
            throw Error(ErrorCode::invalid_argument, "family must be gamma, lambda, gamma_star or lambda_star");
          if (points < 2)
            throw Error(ErrorCode::invalid_argument, "curve needs at least 2 points");
          const auto dir = measure_for("auc_lambda", direction, points).direction;
          const bool weighted = family.ends_with("_star");
          const auto fam = family.starts_with("lambda") ? RatioFamily::lambda : RatioFamily::gamma;
          const auto grid = QuantileGrid::population(Distribution::parse(dist), points);
          const auto p = grid.lower_probs();
          std::vector<std::pair<double, double>> out;
          for (std::size_t j = 0; j < grid.size(); ++j) {
            const double v = ratio_at(grid, j, fam, dir);
            out.emplace_back(p[j], weighted ? p[j] * v : v);
          }
          return out;
        },
        py::arg("dist"), py::arg("family") = "gamma", py::arg("points") = 100,
        py::arg("direction") = "right");

  // Returns the report as JSON text; the Python wrapper decodes it.
  m.def("_simulate_json",
        [](const std::string& config_json) {
          const auto cfg = io::sim_config_from_json(io::json::parse(config_json));
          CoverageReport r;
          {
            py::gil_scoped_release release;
            r = run_coverage(cfg);
          }
          auto j = io::to_json(r);
          j["elapsed_seconds"] = r.elapsed_seconds;
          j["threads_used"] = r.threads_used;
          return j.dump();
        },
        py::arg("config_json"));
}
