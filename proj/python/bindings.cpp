// Python bindings. Structured results cross the boundary as JSON text and are
// decoded in the package __init__.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ipmlab/besov_ipm.hpp"
#include "ipmlab/estimator.hpp"
#include "ipmlab/haar_mra.hpp"
#include "ipmlab/harness.hpp"
#include "ipmlab/io.hpp"
#include "ipmlab/lecam.hpp"
#include "ipmlab/moment_priors.hpp"
#include "ipmlab/simplex.hpp"

namespace py = pybind11;
using namespace ipmlab;

namespace {

PointSet to_points(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::domain_error("expected an (n, d) array");
  const auto d = static_cast<int>(a.shape(1));
  return PointSet(d, std::vector<double>(a.data(), a.data() + a.size()));
}

std::string rate_sweep_json(const std::string& family, int d, double beta, double gamma,
                            std::vector<std::size_t> n_grid, int reps, std::uint64_t seed, int threads) {
  RateConfig c;
  c.family = parse_family(family);
  c.d = d;
  c.beta = beta;
  c.gamma = gamma;
  if (!n_grid.empty()) c.n_grid = std::move(n_grid);
  c.reps = reps;
  c.master_seed = seed;
  c.threads = threads;
  const auto r = rate_sweep(c);
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n}, {"mean_error", row.mean_error}, {"stderr", row.stderr_}, {"reps", row.reps}});
  Json out = slope_summary(r);
  out["rows"] = rows;
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Besov IPM estimation: Haar transforms, plug-in estimator, prior pairs, certificates";

  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def(
      "analyze",
      [](int d, int level, std::vector<double> values) {
        const auto c = analyze(DyadicFunction(d, level, std::move(values)));
        return py::make_tuple(c.scaling(), std::vector<double>(c.detail().begin(), c.detail().end()));
      },
      py::arg("d"), py::arg("level"), py::arg("values"));
  m.def(
      "closed_form_ipm",
      [](int d, int level, std::vector<double> mu, std::vector<double> nu, double gamma) {
        return ipm_closed_form(analyze(DyadicFunction(d, level, std::move(mu))),
                               analyze(DyadicFunction(d, level, std::move(nu))), gamma);
      },
      py::arg("d"), py::arg("level"), py::arg("mu"), py::arg("nu"), py::arg("gamma"));
  m.def(
      "plugin_ipm",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> x,
         py::array_t<double, py::array::c_style | py::array::forcecast> y, double beta, double gamma) {
        const auto px = to_points(x), py_ = to_points(y);
        return plugin_ipm(px, py_, beta, gamma, px.dim());
      },
      py::arg("x"), py::arg("y"), py::arg("beta"), py::arg("gamma"));
  m.def("choose_truncation", &choose_truncation, py::arg("n"), py::arg("beta"), py::arg("d"));
  m.def("choose_K", &choose_K, py::arg("n"), py::arg("c") = 2.0);
  m.def(
      "_prior_pair_json",
      [](int K, double tau, int grid) { return to_json(construct_prior_pair(K, tau, grid)).dump(); },
      py::arg("K"), py::arg("tau") = 1.0, py::arg("grid") = kDefaultPriorGrid);
  m.def(
      "_certificate_json",
      [](double n, double beta, double gamma, int d, double c, double tau, int grid) {
        return to_json(lower_bound_certificate(n, beta, gamma, d, c, tau, grid)).dump();
      },
      py::arg("n"), py::arg("beta"), py::arg("gamma"), py::arg("d"), py::arg("c") = 2.0, py::arg("tau") = 1.0,
      py::arg("grid") = kDefaultPriorGrid);
  m.def("_rate_sweep_json", &rate_sweep_json, py::arg("family"), py::arg("d"), py::arg("beta"), py::arg("gamma"),
        py::arg("n_grid"), py::arg("reps"), py::arg("seed"), py::arg("threads") = 0);
}
