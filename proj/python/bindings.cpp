#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ootp/server.hpp"
#include "ootp/session.hpp"
#include "ootp/translate.hpp"

namespace py = pybind11;

namespace {

py::int_ to_py(const ootp::Integer& v) { return py::int_(py::str(v.str())); }

ootp::State to_state(const std::vector<py::int_>& values) {
  ootp::State s;
  for (const auto& v : values) s.push_back(ootp::Integer::parse(py::str(v).cast<std::string>()));
  return s;
}

py::dict to_py(const ootp::RunResult& r) {
  py::dict final_state;
  for (const auto& [name, v] : r.final_state) final_state[py::str(name)] = to_py(v);
  py::dict out;
  out["status"] = r.status == ootp::RunStatus::Terminated ? "terminated" : "fuel_exhausted";
  out["final_state"] = final_state;
  out["steps"] = r.steps;
  return out;
}

}  // namespace

PYBIND11_MODULE(_ootp, m) {
  py::register_exception<ootp::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ootp::TacticSyntaxError>(m, "TacticSyntaxError", PyExc_ValueError);
  py::register_exception<ootp::ImpSyntaxError>(m, "ImpSyntaxError", PyExc_ValueError);
  py::register_exception<ootp::ScriptSyntaxError>(m, "ScriptSyntaxError", PyExc_ValueError);
  py::register_exception<ootp::ProofError>(m, "ProofError", PyExc_RuntimeError);
  py::register_exception<ootp::CommandError>(m, "CommandError", PyExc_RuntimeError);

  m.def(
      "normalize_sequent", [](const std::string& text) { return ootp::print_sequent(ootp::parse_sequent(text)); },
      py::arg("sequent"));
  m.def(
      "prove",
      [](const std::string& sequent, const std::string& tactic) {
        return ootp::print_sequent(ootp::prove(ootp::parse_sequent(sequent), ootp::parse_tactic(tactic)).sequent());
      },
      py::arg("sequent"), py::arg("tactic") = "DEPTH 12", "Returns the proved sequent or raises ProofError.");
  m.def(
      "run_script",
      [](const std::string& text, const std::string& base_dir) {
        const ootp::ScriptResult r = ootp::run_script(text, base_dir);
        return py::make_tuple(r.exit_code, r.transcript);
      },
      py::arg("text"), py::arg("base_dir") = ".");

  py::class_<ootp::Session>(m, "Session")
      .def(py::init<std::string>(), py::arg("base_dir") = ".")
      .def("new_goal", &ootp::Session::new_goal)
      .def("apply", &ootp::Session::apply)
      .def("undo", &ootp::Session::undo)
      .def("qed", [](ootp::Session& s) { return ootp::print_sequent(s.qed().sequent()); })
      .def("applicable", &ootp::Session::applicable)
      .def("load_group", &ootp::Session::load_group)
      .def("derive", [](ootp::Session& s, const std::string& atom) { return ootp::print_sequent(s.derive(atom).sequent()); })
      .def_property_readonly("has_goal", &ootp::Session::has_goal)
      .def("render", &ootp::Session::render);

  py::class_<ootp::SessionServer>(m, "Server")
      .def(py::init<>())
      .def("handle", &ootp::SessionServer::handle_text, py::arg("request"), "JSON request text in, JSON response text out.");

  m.def(
      "translate",
      [](const std::string& source, const std::string& to) {
        const ootp::ImpProgram p = ootp::parse_imp(source);
        if (to == "oo") return ootp::emit_oo_source(ootp::translate_to_oo(p));
        if (to == "fun") return ootp::emit_fun_source(ootp::translate_to_fun(p));
        throw py::value_error("target must be 'oo' or 'fun'");
      },
      py::arg("source"), py::arg("to"));
  m.def(
      "run",
      [](const std::string& source, const std::string& form, const std::string& entry,
         const std::vector<py::int_>& init, std::size_t fuel) {
        const ootp::ImpProgram p = ootp::parse_imp(source);
        const ootp::State s = to_state(init);
        try {
          if (form == "imp") return to_py(ootp::interp_imp(p, entry, s, fuel));
          if (form == "oo") return to_py(ootp::interp_oo(ootp::translate_to_oo(p), entry, s, fuel));
          if (form == "fun") return to_py(ootp::interp_fun(ootp::translate_to_fun(p), entry, s, fuel));
        } catch (const std::invalid_argument& e) {
          throw py::value_error(e.what());
        }
        throw py::value_error("form must be 'imp', 'oo' or 'fun'");
      },
      py::arg("source"), py::arg("form"), py::arg("entry"), py::arg("init"), py::arg("fuel") = 10000);
  m.def(
      "check_equiv",
      [](const std::string& source, std::int64_t lo, std::int64_t hi, std::size_t fuel) {
        const ootp::ImpProgram p = ootp::parse_imp(source);
        const ootp::EquivReport r =
            ootp::check_equiv(p, std::vector<ootp::Range>(p.vars.size(), {lo, hi}), p.labels, fuel);
        return py::make_tuple(r.ok(), r.runs, r.render());
      },
      py::arg("source"), py::arg("lo") = -5, py::arg("hi") = 5, py::arg("fuel") = 10000,
      "Returns (ok, runs, report) over every entry label and every initial state in [lo, hi].");
}
