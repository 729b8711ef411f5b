#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hcwalk/classical.hpp"
#include "hcwalk/errors.hpp"
#include "hcwalk/fullwalk.hpp"
#include "hcwalk/graph.hpp"
#include "hcwalk/reduced.hpp"
#include "hcwalk/topology.hpp"
#include "hcwalk/walk.hpp"

namespace py = pybind11;

namespace {

using namespace hcwalk;

WalkTopology as_topology(const std::string& text) {
  return WalkTopology::parse(text);
}

std::string kind_name(const WalkTopology& t) {
  switch (t.kind) {
    case Kind::Bare: return "bare";
    case Kind::Tails: return "tails";
    case Kind::Concatenated: return "concat";
  }
  return "";
}

WalkOperator reduced_operator(const WalkTopology& t) {
  WalkTopology qt = t;
  qt.self_loops = true;
  return build_operator(build_basis(qt));
}

py::dict summary_dict(const HittingSummary& s) {
  py::dict out;
  out["t_c"] = s.t_c ? py::object(py::int_(*s.t_c)) : py::object(py::none());
  out["tau_q"] = s.tau_q;
  out["p_total"] = s.p_total;
  out["steps_run"] = s.steps_run;
  out["converged"] = s.converged;
  out["dark"] = s.dark;
  return out;
}

template <typename Fn>
void def_on_topology(py::module_& m, const char* name, Fn fn,
                     const char* doc) {
  m.def(name, [fn](const WalkTopology& t) { return fn(t); },
        py::arg("topology"), doc);
  m.def(name, [fn](const std::string& text) { return fn(as_topology(text)); },
        py::arg("topology"), doc);
}

}  // namespace

PYBIND11_MODULE(_hcwalk, m) {
  m.doc() =
      "Hitting times of classical and quantum walks on hypercubes with "
      "locally attached graphs";

  py::register_exception<Error>(m, "WalkError");
  py::register_exception<DarkStateDetected>(m, "DarkStateError");

  py::class_<WalkTopology>(m, "WalkTopology")
      .def_static("parse", &as_topology, py::arg("text"))
      .def("__str__", &WalkTopology::to_string)
      .def("__repr__",
           [](const WalkTopology& t) {
             return "WalkTopology('" + t.to_string() + "')";
           })
      .def("__eq__",
           [](const WalkTopology& a, const WalkTopology& b) { return a == b; })
      .def_property_readonly("kind", &kind_name)
      .def_readonly("d", &WalkTopology::d)
      .def_readonly("n", &WalkTopology::n)
      .def_readonly("q", &WalkTopology::q)
      .def_readonly("dims", &WalkTopology::dims)
      .def_property_readonly("mode",
                             [](const WalkTopology& t) {
                               return t.mode ==
                                              WalkMode::CentralCornerToCorner
                                          ? "central"
                                          : "penetrate";
                             })
      .def_readonly("loops", &WalkTopology::self_loops);

  m.def("parse_topology", &as_topology, py::arg("text"),
        "Parse the structured-text topology format");

  def_on_topology(m, "degree",
                  [](const WalkTopology& t) { return degree(t); },
                  "Regularized vertex degree p");
  def_on_topology(
      m, "reduced_dimension",
      [](const WalkTopology& t) { return reduced_dimension(t); },
      "Dimension of the symmetry-reduced walk space");
  def_on_topology(
      m, "classical_hitting",
      [](const WalkTopology& t) { return to_string(classical_hitting(t)); },
      "Exact classical hitting time as a rational string");
  def_on_topology(
      m, "classical_hitting_float",
      [](const WalkTopology& t) { return to_double(classical_hitting(t)); },
      "Classical hitting time rounded to a double");
  def_on_topology(
      m, "markov_first_passage",
      [](const WalkTopology& t) {
        return to_string(
            markov_first_passage(build_explicit_graph(t, false)));
      },
      "Brute-force first passage time on the explicit graph");
  def_on_topology(
      m, "expected_hitting_exact",
      [](const WalkTopology& t) {
        return expected_hitting_exact(reduced_operator(t));
      },
      "Closed-form expected quantum hitting time; raises DarkStateError "
      "when part of the start state never arrives");

  auto quantum = [](const WalkTopology& t, double eps,
                    std::int64_t max_steps) {
    return summary_dict(
        run_measured_walk(reduced_operator(t), 1.0 - eps, max_steps));
  };
  m.def("quantum_hitting", quantum, py::arg("topology"),
        py::arg("eps") = 1e-4, py::arg("max_steps") = 10'000'000,
        "Measured-walk hitting summary at threshold 1 - eps");
  m.def(
      "quantum_hitting",
      [quantum](const std::string& text, double eps, std::int64_t max_steps) {
        return quantum(as_topology(text), eps, max_steps);
      },
      py::arg("topology"), py::arg("eps") = 1e-4,
      py::arg("max_steps") = 10'000'000);

  auto conditional = [](const WalkTopology& t, std::int64_t steps) {
    ConditionalHitting c = conditional_hitting(reduced_operator(t), steps);
    py::dict out;
    out["tilde_tau"] = c.tilde_tau;
    out["p_total"] = c.p_total;
    return out;
  };
  m.def("conditional_hitting", conditional, py::arg("topology"),
        py::arg("steps") = 1'000'000,
        "Conditional hitting time, finite even with dark states");
  m.def(
      "conditional_hitting",
      [conditional](const std::string& text, std::int64_t steps) {
        return conditional(as_topology(text), steps);
      },
      py::arg("topology"), py::arg("steps") = 1'000'000);
}
