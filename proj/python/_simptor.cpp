#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simptor/commands.hpp"
#include "simptor/errors.hpp"
#include "simptor/verify.hpp"

namespace py = pybind11;
using namespace simptor;

namespace {

FiniteGroup load_group(const std::string& s, const Caps& c) {
  return group_from_json(!s.empty() && s.front() == '{' ? parse_json_text(s) : json(s), c);
}

py::tuple result(const CommandOutput& out) { return py::make_tuple(dump_canonical(out.value), out.text, out.status); }

template <class F>
py::tuple guarded(F&& body) {
  CommandOutput out;
  {
    py::gil_scoped_release release;
    out = body();
  }
  return result(out);
}

}  // namespace

PYBIND11_MODULE(_simptor, m) {
  m.doc() = "Finite simplicial groups and chain complexes of groups";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&] { return py::object(py::exception<Error>(m, "Error", PyExc_ValueError)); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(error_name(e.code())), e.what(), exit_status(e.code()));
      PyErr_SetObject(error.get_stored().ptr(), args.ptr());
    }
  });

  py::class_<Caps>(m, "Caps")
      .def(py::init<>())
      .def_static("from_env", &Caps::from_env)
      .def_readwrite("max_order", &Caps::max_order)
      .def_readwrite("level_cap", &Caps::level_cap)
      .def_readwrite("iso_cap", &Caps::iso_cap)
      .def_readwrite("hom_family_cap", &Caps::hom_family_cap);

  m.def("build", [](const std::string& s, const Caps& c) { return guarded([&] { return run_build(load_input(s, c)); }); });
  m.def("moore", [](const std::string& s, const Caps& c) { return guarded([&] { return run_moore(load_input(s, c)); }); });
  m.def("homotopy",
        [](const std::string& s, const Caps& c) { return guarded([&] { return run_homotopy(load_input(s, c)); }); });
  m.def("radical", [](const std::string& s, const std::string& theory, int n, const Caps& c) {
    return guarded([&] { return run_radical(load_input(s, c), theory, n); });
  });
  m.def("cot", [](const std::string& s, int n, const Caps& c) { return guarded([&] { return run_cot(load_input(s, c), n); }); });
  m.def("cosk",
        [](const std::string& s, int n, const Caps& c) { return guarded([&] { return run_cosk(load_input(s, c), n, c); }); });
  m.def("lattice",
        [](const std::string& s, const Caps& c) { return guarded([&] { return run_lattice(load_input(s, c)); }); });
  m.def("em", [](const std::string& g, int n, int D, const Caps& c) { return guarded([&] { return run_em(g, n, D, c); }); });
  m.def("pi", [](const std::string& s, const std::string& upper, const std::string& lower, const Caps& c) {
    return guarded([&] { return run_pi(load_input(s, c), upper, lower); });
  });
  m.def("verify", [](const std::string& suite, std::uint64_t seed, const Caps& c) {
    return guarded([&] { return run_verify(suite, seed, c); });
  });
  m.def("suite_names", &suite_names);

  m.def("abelian_invariants", [](const std::string& g, const Caps& c) { return abelian_invariants(load_group(g, c)); });
  m.def("are_isomorphic", [](const std::string& a, const std::string& b, const Caps& c) {
    return are_isomorphic(load_group(a, c), load_group(b, c), c);
  });
}
