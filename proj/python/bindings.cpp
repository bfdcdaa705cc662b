// Python bindings: operators, norms, the check registry and suite runs.
// Reports cross the boundary as plain dicts (through their JSON form).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fracmorrey/catalog.hpp"
#include "fracmorrey/errors.hpp"
#include "fracmorrey/operators.hpp"
#include "fracmorrey/spaces.hpp"
#include "fracmorrey/suite.hpp"

namespace py = pybind11;
using namespace fracmorrey;

namespace {

py::object toPython(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json fromPython(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Point toPoint(const std::vector<double>& xs) {
  requireSupportedDimension(static_cast<int>(xs.size()));
  Point p(static_cast<int>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) p[static_cast<int>(i)] = xs[i];
  return p;
}

OperatorConfig makeOperator(const std::string& kernel, double alpha, int n, double relTol) {
  QuadratureSettings qs;
  qs.relTol = relTol;
  return OperatorConfig(catalogKernel(kernel, n), alpha, qs);
}

py::dict profileDict(const NormProfile& p) {
  py::dict d;
  d["r"] = std::vector<double>(p.grid.nodes().begin(), p.grid.nodes().end());
  d["values"] = p.values;
  d["sup"] = p.supValue;
  d["arg_sup"] = p.argSup;
  d["sup_at_endpoint"] = p.supAtEndpoint;
  return d;
}

// One-entry suite document; JSON is valid YAML flow syntax.
CheckInvocation invocationFor(const std::string& check, const py::object& params, const std::string& name) {
  nlohmann::json entry = params.is_none() ? nlohmann::json::object() : fromPython(params);
  entry["check"] = check;
  entry["name"] = name.empty() ? check : name;
  const nlohmann::json doc{{"checks", nlohmann::json::array({entry})}};
  return parseConfig(doc.dump()).checks.at(0);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical checks for fractional integrals with rough kernels on local Morrey spaces";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<QuadratureError>(m, "QuadratureError", error.ptr());

  m.def(
      "fractional_integral",
      [](const std::string& kernel, const std::string& f, const std::vector<double>& x, double alpha, double relTol) {
        const Point p = toPoint(x);
        return fractionalIntegral(makeOperator(kernel, alpha, p.dim(), relTol), catalogFunction(f, p.dim()), p);
      },
      py::arg("kernel"), py::arg("f"), py::arg("x"), py::arg("alpha"), py::arg("rel_tol") = 1e-8,
      "T f(x) for catalog kernel and function names; the dimension is len(x).");

  m.def(
      "t_tilde",
      [](const std::string& kernel, const std::string& f, const std::vector<double>& x, double alpha, double relTol) {
        const Point p = toPoint(x);
        return tTildeMajorant(makeOperator(kernel, alpha, p.dim(), relTol), catalogFunction(f, p.dim()), p);
      },
      py::arg("kernel"), py::arg("f"), py::arg("x"), py::arg("alpha"), py::arg("rel_tol") = 1e-8);

  m.def(
      "fractional_maximal",
      [](const std::string& kernel, const std::string& f, const std::vector<double>& x, double alpha, double relTol) {
        const Point p = toPoint(x);
        return fractionalMaximal(makeOperator(kernel, alpha, p.dim(), relTol), catalogFunction(f, p.dim()), p);
      },
      py::arg("kernel"), py::arg("f"), py::arg("x"), py::arg("alpha"), py::arg("rel_tol") = 1e-8);

  m.def(
      "commutator",
      [](const std::string& kernel, const std::vector<std::string>& b, const std::string& f,
         const std::vector<double>& x, double alpha, double relTol) {
        const Point p = toPoint(x);
        std::vector<Symbol> symbols;
        for (const std::string& s : b) symbols.push_back(catalogSymbol(s, p.dim()));
        return multilinearCommutator(makeOperator(kernel, alpha, p.dim(), relTol), symbols,
                                     catalogFunction(f, p.dim()), p);
      },
      py::arg("kernel"), py::arg("b"), py::arg("f"), py::arg("x"), py::arg("alpha"), py::arg("rel_tol") = 1e-8);

  m.def("majorant_constant", &majorantConstant, py::arg("n"), py::arg("alpha"));

  m.def(
      "campanato_profile",
      [](const std::string& b, double p, double lambda, const std::vector<double>& x0, double rMin, double rMax,
         int count) {
        const Point c = toPoint(x0);
        return profileDict(campanatoNorm(catalogSymbol(b, c.dim()), p, lambda, c, logGrid(rMin, rMax, count)));
      },
      py::arg("b"), py::arg("p"), py::arg("lam"), py::arg("x0"), py::arg("r_min") = 1e-3, py::arg("r_max") = 1e3,
      py::arg("count") = 25);

  m.def(
      "morrey_profile",
      [](const std::string& f, double p, const std::string& weight, const std::map<std::string, double>& weightParams,
         const std::vector<double>& x0, double rMin, double rMax, int count) {
        const Point c = toPoint(x0);
        return profileDict(localMorreyNorm(catalogFunction(f, c.dim()), p, catalogWeight(weight, weightParams), c,
                                           logGrid(rMin, rMax, count)));
      },
      py::arg("f"), py::arg("p"), py::arg("weight"), py::arg("weight_params") = std::map<std::string, double>{},
      py::arg("x0"), py::arg("r_min") = 1e-2, py::arg("r_max") = 1e2, py::arg("count") = 17);

  m.def("list_catalog", [] {
    py::list out;
    for (const CatalogEntryInfo& e : catalogListing()) {
      py::dict d;
      d["kind"] = e.kind;
      d["name"] = e.name;
      d["description"] = e.description;
      d["params"] = e.params;
      out.append(d);
    }
    return out;
  });

  m.def("list_checks", [] {
    std::vector<std::string> names;
    for (const CheckDescription& d : registeredChecks()) names.push_back(d.name);
    return names;
  });

  m.def(
      "describe_check",
      [](const std::string& name) {
        const CheckDescription d = describeCheck(name);
        py::dict out;
        out["name"] = d.name;
        out["summary"] = d.summary;
        out["defaults"] = toPython(d.defaults);
        return out;
      },
      py::arg("name"));

  m.def(
      "run_check",
      [](const std::string& check, const py::object& params, const std::string& name) {
        const CheckInvocation inv = invocationFor(check, params, name);
        CheckReport report;
        {
          py::gil_scoped_release release;
          report = runCheck(inv, SuiteSettings{});
        }
        return toPython(report.toJson());
      },
      py::arg("check"), py::arg("params") = py::none(), py::arg("name") = "",
      "Runs one registered check with parameter overrides and returns the report as a dict.");

  m.def(
      "run_suite",
      [](const std::string& configPath, const std::string& out, int threads, std::optional<std::uint64_t> seed) {
        SuiteConfig config = loadConfig(configPath);
        if (!out.empty()) config.settings.out = out;
        if (threads > 0) config.settings.threads = threads;
        if (seed) config.settings.seed = *seed;
        SuiteOutcome outcome;
        {
          py::gil_scoped_release release;
          outcome = runSuite(config);
        }
        py::dict d;
        d["exit_code"] = outcome.exitCode;
        d["summary"] = summaryCsv(outcome.results);
        py::dict verdicts;
        for (const SuiteResult& r : outcome.results) {
          verdicts[py::str(r.name)] = r.error.empty() ? toString(r.report.verdict) : std::string("error");
        }
        d["verdicts"] = verdicts;
        return d;
      },
      py::arg("config"), py::arg("out") = "", py::arg("threads") = 0, py::arg("seed") = py::none());

  m.def("default_suite_document", &defaultSuiteDocument);
}
