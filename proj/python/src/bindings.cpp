#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "negdep/cli.hpp"
#include "negdep/concentration.hpp"
#include "negdep/coupling.hpp"
#include "negdep/dependence.hpp"
#include "negdep/io.hpp"
#include "negdep/martingale.hpp"

namespace py = pybind11;
using namespace negdep;

namespace {

// Rationals cross the boundary as "p/q" strings; the Python layer turns them
// into fractions.Fraction.
using FunctionArg = std::variant<std::string, std::vector<std::string>>;

TestFunction make_function(const FunctionArg& f, int n, bool monotone) {
  if (const auto* spec = std::get_if<std::string>(&f)) return function_from_spec(*spec, n);
  std::vector<Rational> values;
  for (const auto& v : std::get<std::vector<std::string>>(f)) values.push_back(parse_rational(v));
  return TestFunction::from_table(n, std::move(values), monotone);
}

Assignment make_assignment(const std::map<int, int>& revealed) {
  std::vector<int> idx, vals;
  for (const auto& [i, v] : revealed) {
    idx.push_back(i);
    vals.push_back(v);
  }
  return Assignment(std::move(idx), std::move(vals));
}

ExplicitMeasure make_measure(int n, const std::map<std::string, std::string>& atoms) {
  std::vector<std::pair<std::string, Rational>> parsed;
  for (const auto& [x, p] : atoms) parsed.emplace_back(x, parse_rational(p));
  return new_explicit(n, std::move(parsed));
}

}  // namespace

PYBIND11_MODULE(_negdep, mod) {
  mod.doc() = "Exact negative-dependence checks, monotone couplings and martingale tail bounds";

  py::register_exception<Error>(mod, "NegdepError");

  py::class_<ExplicitMeasure>(mod, "Measure")
      .def(py::init(&make_measure), py::arg("n"), py::arg("atoms"))
      .def_static("family", [](const std::string& spec) { return family_from_spec(spec); })
      .def_static("from_json", [](const std::string& text) { return deserialize_measure(text); })
      .def_property_readonly("n", &ExplicitMeasure::n)
      .def_property_readonly("atoms",
                             [](const ExplicitMeasure& m) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& a : m.atoms()) {
                                 out.emplace_back(to_bitstring(a.x, m.n()), format_rational(a.p));
                               }
                               return out;
                             })
      .def("probability",
           [](const ExplicitMeasure& m, const std::string& x) {
             return format_rational(m.probability(parse_bitstring(x, m.n())));
           })
      .def("condition", [](const ExplicitMeasure& m, const std::map<int, int>& on) {
        return condition(m, make_assignment(on));
      })
      .def("marginal", [](const ExplicitMeasure& m, const std::vector<int>& subset) { return marginal(m, subset); })
      .def("to_json", [](const ExplicitMeasure& m) { return serialize_measure(m); })
      .def("__eq__", [](const ExplicitMeasure& a, const ExplicitMeasure& b) { return a == b; })
      .def("__repr__", [](const ExplicitMeasure& m) {
        return "<Measure n=" + std::to_string(m.n()) + " atoms=" + std::to_string(m.support_size()) + ">";
      });

  mod.def("notions", [] {
    std::vector<std::string> out;
    for (Notion n : all_notions()) out.emplace_back(notion_short_name(n));
    return out;
  });

  mod.def(
      "check",
      [](const ExplicitMeasure& m, const std::string& notion) {
        const NotionReport r = check_notion(m, parse_notion(notion));
        auto doc = to_json(r);
        doc["passed"] = r.passed();
        if (r.certificate) doc["recheck"] = recheck_certificate(m, r);
        return doc.dump();
      },
      py::arg("measure"), py::arg("notion"));

  mod.def(
      "dominance",
      [](const ExplicitMeasure& lower, const ExplicitMeasure& upper, bool covering) {
        const DominanceResult r = check_coupling_feasible(lower, upper, covering);
        nlohmann::json doc = {{"dominates", r.dominates}, {"max_flow", format_rational(r.max_flow)}};
        if (r.certificate) {
          doc["certificate"] = to_json(*r.certificate);
          doc["certificate_valid"] = verify_certificate(lower, upper, *r.certificate);
        }
        return doc.dump();
      },
      py::arg("lower"), py::arg("upper"), py::arg("covering") = false);

  mod.def(
      "coupling",
      [](const ExplicitMeasure& lower, const ExplicitMeasure& upper, bool covering) {
        const Coupling c = build_monotone_coupling(lower, upper, covering);
        auto doc = to_json(c);
        doc["valid"] = verify_coupling(c);
        return doc.dump();
      },
      py::arg("lower"), py::arg("upper"), py::arg("covering") = false);

  mod.def(
      "pick_index",
      [](const ExplicitMeasure& m, const std::map<int, int>& revealed) {
        return to_json(pick_index(m, make_assignment(revealed))).dump();
      },
      py::arg("measure"), py::arg("revealed") = std::map<int, int>{});

  mod.def(
      "martingale",
      [](const ExplicitMeasure& m, const FunctionArg& f, std::optional<std::vector<int>> order, bool monotone) {
        const TestFunction fn = make_function(f, m.n(), monotone);
        const MartingaleTree tree = order ? fixed_order_tree(m, fn, *order) : build_adaptive_tree(m, fn);
        auto doc = to_json(tree);
        doc["max_increment"] = format_rational(max_step(tree, StepMode::Increment));
        doc["max_gap"] = format_rational(max_step(tree, StepMode::Gap));
        return doc.dump();
      },
      py::arg("measure"), py::arg("f") = std::string("sum"), py::arg("order") = py::none(),
      py::arg("monotone") = false);

  mod.def(
      "tail",
      [](const ExplicitMeasure& m, const FunctionArg& f, std::optional<std::vector<std::string>> grid,
         bool monotone) {
        const TestFunction fn = make_function(f, m.n(), monotone);
        std::vector<Rational> t;
        if (grid) {
          for (const auto& s : *grid) t.push_back(parse_rational(s));
        } else {
          t = default_t_grid(fn);
        }
        return to_json(verify_theorem(m, fn, std::move(t))).dump();
      },
      py::arg("measure"), py::arg("f") = std::string("sum"), py::arg("grid") = py::none(),
      py::arg("monotone") = false);

  mod.def(
      "theorem_bound",
      [](int n, const std::string& t, bool monotone) { return theorem_bound(n, parse_rational(t), monotone); },
      py::arg("n"), py::arg("t"), py::arg("monotone") = false);

  mod.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
