#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bhk/cli.hpp"
#include "bhk/io.hpp"

namespace py = pybind11;
using namespace bhk;

namespace {

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

std::string complex_summary(const std::string& text) {
  auto c = io::decode_complex(io::json::parse(text));
  io::json ranks = io::json::object();
  for (int n = c.lo(); n <= c.hi(); ++n) ranks[std::to_string(n)] = c.rank(n);
  return io::json{{"name", c.name()}, {"lo", c.lo()}, {"hi", c.hi()}, {"ranks", ranks},
                  {"euler_class", euler_class(c).get_str()}}
      .dump();
}

std::string word_length(const std::string& group_json, const std::string& element) {
  auto g = io::decode_group(io::json::parse(group_json), "group");
  LengthOracle o(g);
  return to_string(o.length(parse_element(*g, element)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bounded homological algebra workbench";
  m.attr("report_schema") = io::kReportSchema;
  m.attr("schema_version") = io::kSchemaVersion;

  py::register_exception<io::SchemaError>(m, "SchemaError", PyExc_ValueError);

  m.def("run", &run, py::arg("args"), "Run a workbench command; returns (exit_code, stdout, stderr).");
  m.def("complex_summary", &complex_summary, py::arg("text"), "Validate a complex given as JSON text.");
  m.def("word_length", &word_length, py::arg("group"), py::arg("element"),
        "Exact word length of an element, as a rational string.");

  py::class_<BoundingFunction>(m, "BoundingFunction")
      .def_static("parse", [](const std::string& s) { return BoundingFunction::parse(s); })
      .def("eval", [](const BoundingFunction& f, const std::string& x) { return to_string(f.eval(parse_rational(x))); })
      .def("kind", [](const BoundingFunction& f) { return to_string(f.kind()); })
      .def("__str__", &BoundingFunction::to_string)
      .def("__repr__", [](const BoundingFunction& f) { return "BoundingFunction('" + f.to_string() + "')"; });

  m.def("class_contains", [](const std::string& cls, const BoundingFunction& f) {
    return BoundingClass::by_name(cls).contains(f);
  });
}
