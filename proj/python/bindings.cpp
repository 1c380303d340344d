// Thin text-in, text-out bindings. Reports come back as the JSON documents
// the command line prints; the Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "icalc/analysis.hpp"
#include "icalc/core.hpp"
#include "icalc/lab.hpp"
#include "icalc/report.hpp"
#include "icalc/rewrite.hpp"
#include "icalc/textio.hpp"
#include "icalc/unrewrite.hpp"

namespace py = pybind11;
using namespace icalc;

namespace {

System load(const std::string& text) {
  if (auto b = find_builtin(text)) return *b;
  System s = parse_system(text).system;
  Validation v = validate_system(s);
  if (!v.ok()) throw Error("invalid system:\n" + v.to_string());
  return s;
}

Configuration config(const System& s, const std::string& text) {
  Configuration c = parse_config(text, s);
  Validation v = validate_config(s, c);
  if (!v.ok()) throw Error("invalid configuration:\n" + v.to_string());
  return c;
}

}  // namespace

PYBIND11_MODULE(_icalc, m) {
  m.doc() = "Interaction calculus engine";
  py::register_exception<Error>(m, "IcalcError", PyExc_ValueError);

  py::class_<System>(m, "System")
      .def(py::init(&load), py::arg("source"),
           "A builtin name or the text of a system file.")
      .def("__str__", [](const System& s) { return print_system(s); })
      .def_property_readonly("rules", [](const System& s) {
        std::vector<std::string> out;
        for (const auto& r : s.rules) out.push_back(print_rule(r));
        return out;
      });

  m.def("builtin_names", &builtin_names);
  m.def("canonical_key", [](const System& s, const std::string& c) { return canonical_key(config(s, c)); });
  m.def("congruent", [](const System& s, const std::string& a, const std::string& b) {
    return congruent(config(s, a), config(s, b));
  });
  m.def("reduces_in_one_step", [](const System& s, const std::string& a, const std::string& b) {
    return reduces_in_one_step(s, config(s, a), config(s, b));
  });
  m.def("arity_characterization", &arity_characterization);

  m.def("check_json", [](const System& s) { return print_report(s, reversibility_report(s), true); });
  m.def(
      "reduce_json",
      [](const System& s, const std::string& c, const std::string& strategy, std::size_t fuel) {
        auto st = parse_strategy(strategy);
        if (!st) throw Error("unknown strategy '" + strategy + "'");
        NameSupply fresh;
        return print_trace(normalize(s, config(s, c), *st, fuel, fresh), true, true);
      },
      py::arg("system"), py::arg("config"), py::arg("strategy") = "interaction-first",
      py::arg("fuel") = 10000);
  m.def("expand_json", [](const System& s, const std::string& c) {
    Configuration cc = config(s, c);
    return print_expansions(cc, expansions(s, cc), true);
  });
  m.def(
      "diamond_json",
      [](const System& s, const std::string& c, const std::string& mode, std::size_t depth) {
        auto md = parse_diamond_mode(mode);
        if (!md) throw Error("unknown mode '" + mode + "'");
        Configuration cc = config(s, c);
        return print_diamond(cc, diamond_check(s, cc, *md, depth), true);
      },
      py::arg("system"), py::arg("config"), py::arg("mode") = "one", py::arg("depth") = 2);
  m.def("witness_json", [](const System& s) { return print_witness(strong_failure_witness(s), true); });
  m.def(
      "search_json",
      [](const System& s, std::size_t samples, std::size_t size, std::size_t depth,
         std::uint64_t seed) {
        return print_search(counterexample_search(s, size, samples, depth, seed), true);
      },
      py::arg("system"), py::arg("samples") = 100, py::arg("size") = 4, py::arg("depth") = 2,
      py::arg("seed") = 0);
  m.def("random_config", [](const System& s, std::size_t size, std::uint64_t seed) {
    return print_config(random_config(s, size, seed));
  });
}
