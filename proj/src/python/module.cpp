#include "aniso/certify.hpp"
#include "aniso/falsify.hpp"
#include "aniso/inequalities.hpp"
#include "aniso/law_io.hpp"
#include "aniso/solver.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace aniso;

namespace {

ConstitutiveLaw law_from_string(const std::string& text) {
  return law_from_json(json::parse(text));
}

std::string cert_to_string(const Certificate& c) { return certificate_to_json(c).dump(); }

}  // namespace

PYBIND11_MODULE(_aniso, m) {
  m.doc() = "Anisotropic Forchheimer toolbox: monotonicity certificates, violation search, "
            "and a staggered-grid steady solver";

  py::enum_<Verdict>(m, "Verdict")
      .value("Monotone", Verdict::Monotone)
      .value("PowerMonotone", Verdict::PowerMonotone)
      .value("NotMonotone", Verdict::NotMonotone)
      .value("Inconclusive", Verdict::Inconclusive);

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("theorem_id", &Certificate::theorem_id)
      .def_readonly("verdict", &Certificate::verdict)
      .def_readonly("order", &Certificate::order)
      .def_readonly("constant", &Certificate::constant)
      .def_readonly("witness", &Certificate::witness)
      .def_readonly("note", &Certificate::note)
      .def("certified", &Certificate::certified)
      .def("to_json", &cert_to_string)
      .def("__repr__", [](const Certificate& c) {
        return "<Certificate " + c.theorem_id + ": " + to_string(c.verdict) + ">";
      });

  py::class_<Violation>(m, "Violation")
      .def_readonly("u", &Violation::u)
      .def_readonly("v", &Violation::v)
      .def_readonly("value", &Violation::value)
      .def_readonly("seed", &Violation::seed);

  py::class_<ConstitutiveLaw>(m, "Law")
      .def_static("from_json", &law_from_string, py::arg("text"))
      .def_property_readonly("dim", [](const ConstitutiveLaw& l) { return l.dim; })
      .def("eval", &ConstitutiveLaw::eval, py::arg("u"))
      .def("to_json", [](const ConstitutiveLaw& l) { return law_to_json(l).dump(); });

  m.def("certify", &certify_composite, py::arg("law"),
        "Combined monotonicity certificate for a law");
  m.def("certify_all", &certify_all, py::arg("law"),
        "Every applicable certificate (combined one last)");
  m.def(
      "falsify",
      [](const ConstitutiveLaw& law, long samples, std::uint64_t seed) {
        SearchConfig cfg;
        cfg.samples = samples;
        cfg.seed = seed;
        return search_violation(law, cfg);
      },
      py::arg("law"), py::arg("samples") = 100000, py::arg("seed") = 0,
      "Search for a monotonicity violation; returns None if none found");
  m.def(
      "empirical_power_constant",
      [](const ConstitutiveLaw& law, double order, long samples, std::uint64_t seed) {
        SearchConfig cfg;
        cfg.samples = samples;
        cfg.seed = seed;
        return empirical_power_constant(law, order, cfg);
      },
      py::arg("law"), py::arg("order"), py::arg("samples") = 100000, py::arg("seed") = 0);
  m.def("mono_product", &mono_product, py::arg("law"), py::arg("u"), py::arg("v"));

  py::class_<Grid2D>(m, "Grid")
      .def(py::init([](int nx, int ny, double lx, double ly) {
             Grid2D g{nx, ny, lx, ly};
             g.validate();
             return g;
           }),
           py::arg("nx"), py::arg("ny"), py::arg("lx") = 1.0, py::arg("ly") = 1.0)
      .def_readonly("nx", &Grid2D::nx)
      .def_readonly("ny", &Grid2D::ny);

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly("ux", [](const SolveReport& r) { return r.state.ux; })
      .def_property_readonly("uy", [](const SolveReport& r) { return r.state.uy; })
      .def_property_readonly("p", [](const SolveReport& r) { return r.state.p; })
      .def_readonly("final_residual", &SolveReport::final_residual)
      .def_readonly("norm_u", &SolveReport::norm_u)
      .def_readonly("norm_div", &SolveReport::norm_div)
      .def_readonly("norm_p", &SolveReport::norm_p)
      .def_readonly("estimate_ratio", &SolveReport::estimate_ratio);

  m.def(
      "solve_manufactured",
      [](const std::string& name, const Grid2D& grid) {
        auto [prob, exact] = manufactured_case(name, grid);
        SolveReport rep = solve_steady(prob, SolverConfig{});
        StaggeredState diff;
        diff.ux = rep.state.ux - exact.ux;
        diff.uy = rep.state.uy - exact.uy;
        diff.p = rep.state.p - exact.p;
        double err = norm_velocity(grid, diff, prob.s());
        return py::make_tuple(rep, err);
      },
      py::arg("name"), py::arg("grid"),
      "Solve a manufactured case; returns (report, velocity error vs the exact pair)");

  m.def(
      "power_mono_strong_slack",
      [](const Vec& x, const Vec& y, double p) {
        Ineq q = power_mono_strong(x, y, p);
        return py::make_tuple(q.lower, q.upper);
      },
      py::arg("x"), py::arg("y"), py::arg("p"),
      "Both sides of the strong power-monotonicity inequality");
}
