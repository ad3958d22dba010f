#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "drinfeld/engine.hpp"

namespace py = pybind11;

namespace {

// Same engine as the CLI: identical inputs give byte-identical reports.
std::string run(const std::string& command, const std::string& document,
                std::optional<long long> depth, std::optional<long long> prec,
                const py::object& bound, bool verify) {
  const auto doc = drinfeld::parse_document(document);
  drinfeld::RunParams par;
  par.depth = depth ? depth : doc.depth;
  par.prec = prec ? prec : doc.prec;
  par.verify = verify;
  if (bound.is_none())
    par.bound = doc.bound;
  else if (py::isinstance<py::int_>(bound))
    par.bound = drinfeld::Rat(bound.cast<long long>());
  else
    par.bound = drinfeld::parse_rat_text(bound.cast<std::string>(), "bound");
  bool all_pass = true;
  return drinfeld::run_command(command, doc, par, nullptr, all_pass).dump(2);
}

}  // namespace

PYBIND11_MODULE(_drinfeld, m) {
  m.doc() = "Exact analyzer for Drinfeld F_p[t]-modules over k((pi))";

  py::register_exception<drinfeld::Error>(m, "DrinfeldError");

  m.def("run", &run, py::arg("command"), py::arg("document"),
        py::arg("depth") = std::nullopt, py::arg("prec") = std::nullopt,
        py::arg("bound") = py::none(), py::arg("verify") = false,
        "Run a command ('validate', 'lift', 'chi-inv', 'analyze', 'uniformize',\n"
        "'tate-ranks') on a JSON or TOML document string; returns the JSON report.\n"
        "depth/prec/bound override the document's params block; absent means auto.");
}
