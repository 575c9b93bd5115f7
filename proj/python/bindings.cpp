#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coxl2/classify.hpp"
#include "coxl2/cli.hpp"
#include "coxl2/davis.hpp"
#include "coxl2/growth.hpp"
#include "coxl2/l2.hpp"

namespace py = pybind11;
using namespace coxl2;

namespace {

py::object to_python(const OrderedJson& j) {
  switch (j.type()) {
    case OrderedJson::value_t::null:
      return py::none();
    case OrderedJson::value_t::boolean:
      return py::bool_(j.get<bool>());
    case OrderedJson::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case OrderedJson::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case OrderedJson::value_t::number_float:
      return py::float_(j.get<double>());
    case OrderedJson::value_t::string:
      return py::str(j.get<std::string>());
    case OrderedJson::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(to_python(e));
      return std::move(out);
    }
    case OrderedJson::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return std::move(out);
    }
    default:
      throw Error("unsupported JSON value");
  }
}

GenSet subset_of(const CoxeterMatrix& m, const std::vector<std::string>& names) { return m.subset(names); }

py::dict degree_dict(const std::map<int, std::int64_t>& c) {
  py::dict out;
  for (auto [k, v] : c) out[py::int_(k)] = v;
  return out;
}

}  // namespace

PYBIND11_MODULE(_coxl2, m) {
  m.doc() = "Coxeter systems, Davis chambers and L2-Betti degree supports";
  m.attr("__version__") = kVersion;
  py::register_exception<Error>(m, "CoxeterError", PyExc_ValueError);

  py::class_<CoxeterMatrix>(m, "CoxeterSystem")
      .def_property_readonly("rank", &CoxeterMatrix::rank)
      .def_property_readonly("generators", &CoxeterMatrix::generators)
      .def("rows", &CoxeterMatrix::rows, "Coxeter matrix rows, 0 meaning infinity")
      .def("to_json", [](const CoxeterMatrix& s) { return to_json(s); })
      .def("to_diagram", [](const CoxeterMatrix& s) { return to_diagram(s); })
      .def(py::self == py::self)
      .def("__repr__", [](const CoxeterMatrix& s) { return "<CoxeterSystem " + to_json(s) + ">"; });

  m.def("parse", [](const std::string& text) { return parse_system(text); }, py::arg("text"),
        "Diagram DSL or JSON (Coxeter or Cartan), sniffed by the first byte");
  m.def("family", [](const std::string& name, int n) { return builtin_family(parse_family(name), n); },
        py::arg("name"), py::arg("n"));

  m.def("classify", [](const CoxeterMatrix& s) { return to_python(classify_payload(s)); }, py::arg("system"));
  m.def("sphericity", &sphericity, py::arg("system"));
  m.def("is_spherical", [](const CoxeterMatrix& s, const std::vector<std::string>& j) {
    return is_spherical(s, subset_of(s, j));
  }, py::arg("system"), py::arg("subset"));
  m.def("sigma_candidates", [](const CoxeterMatrix& s) {
    std::vector<std::vector<std::string>> out;
    for (GenSet j : sigma_candidates(s)) out.push_back(s.names(j));
    return out;
  }, py::arg("system"));
  m.def("d_sigma_cohomology", [](const CoxeterMatrix& s, const std::vector<std::string>& j, const std::string& model) {
    return degree_dict(d_sigma_cohomology(s, subset_of(s, j), parse_model(model), false).nonzero());
  }, py::arg("system"), py::arg("subset"), py::arg("model") = "order",
        "Reduced cohomology of D_J as {degree: rank}");

  m.def("betti_support", [](const CoxeterMatrix& s) { return to_python(betti_payload(s)); }, py::arg("system"));
  m.def("lattice_degrees", [](const CoxeterMatrix& s) { return lattice_degrees(s); }, py::arg("system"));
  m.def("me_compare", [](const std::set<int>& a, const std::set<int>& b) { return verdict_name(me_compare(a, b)); },
        py::arg("left"), py::arg("right"));

  m.def("growth", [](const CoxeterMatrix& s, int n) {
    const GrowthSeries g = enumerate_by_length(s, n);
    return py::make_tuple(g.coefficients, g.complete);
  }, py::arg("system"), py::arg("n"), "(coefficients by length, complete)");
  m.def("covolume_partial_sums", [](const CoxeterMatrix& s, int q, int n) {
    const auto sums = covolume_partial_sums(s, q, n);
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    py::list out;
    for (const auto& x : sums.partial) out.append(fraction(x.str()));
    return out;
  }, py::arg("system"), py::arg("q"), py::arg("n"));
  m.def("lattice_report", [](const CoxeterMatrix& s, int q, int n) { return to_python(km_payload(s, q, n)); },
        py::arg("system"), py::arg("q"), py::arg("n") = 4);

  m.def("execute", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = execute(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs one CLI command line; returns (exit code, stdout, stderr)");
}
