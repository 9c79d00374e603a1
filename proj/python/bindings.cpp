#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "superlap/config.hpp"
#include "superlap/elliptic.hpp"
#include "superlap/errors.hpp"
#include "superlap/extension.hpp"
#include "superlap/heat.hpp"
#include "superlap/io.hpp"
#include "superlap/perimeter.hpp"
#include "superlap/runner.hpp"
#include "superlap/spectral.hpp"
#include "superlap/verify.hpp"

namespace py = pybind11;
using namespace superlap;

namespace {

SpectralMeasure measure_from_pairs(const std::vector<std::pair<double, double>>& pairs,
                                   bool allow_empty) {
  std::vector<Atom> atoms;
  for (const auto& [s, w] : pairs) atoms.push_back({s, w});
  return SpectralMeasure::from_atoms(atoms, allow_empty);
}

std::vector<std::pair<double, double>> atom_pairs(const SpectralMeasure& m) {
  std::vector<std::pair<double, double>> out;
  for (const Atom& a : m.atoms()) out.emplace_back(a.s, a.weight);
  return out;
}

}  // namespace

PYBIND11_MODULE(_superlap, m) {
  m.doc() = "Superposed fractional Neumann problems on an interval";

  auto base = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CompatibilityError>(m, "CompatibilityError", PyExc_RuntimeError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_RuntimeError);
  py::register_exception<FinitenessError>(m, "FinitenessError", PyExc_ValueError);
  py::register_exception<TailError>(m, "TailError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  (void)base;

  m.def("c_ns", &c_ns, py::arg("dim"), py::arg("s"));

  py::class_<SpectralMeasure>(m, "SpectralMeasure")
      .def_static("from_atoms", &measure_from_pairs, py::arg("atoms"), py::arg("allow_empty") = false)
      .def_static("from_density", &SpectralMeasure::from_density, py::arg("f"), py::arg("n_nodes"))
      .def_static("parse", [](const std::string& literal) { return MeasureSpec::parse(literal).build(); })
      .def_property_readonly("atoms", &atom_pairs)
      .def_property_readonly("total_mass", &SpectralMeasure::total_mass)
      .def_property_readonly("s_sharp", [](const SpectralMeasure& mu) { return s_sharp(mu); })
      .def("scaled", &SpectralMeasure::scaled)
      .def("__add__", [](const SpectralMeasure& a, const SpectralMeasure& b) { return a + b; })
      .def("__eq__", &SpectralMeasure::operator==)
      .def("__len__", &SpectralMeasure::size);

  py::class_<DomainMesh>(m, "DomainMesh")
      .def_property_readonly("nodes", &DomainMesh::nodes)
      .def_property_readonly("index_a", &DomainMesh::index_a)
      .def_property_readonly("index_b", &DomainMesh::index_b)
      .def_property_readonly("interior_dofs", &DomainMesh::interior_dofs)
      .def_property_readonly("exterior_dofs", &DomainMesh::exterior_dofs)
      .def("dof_class", [](const DomainMesh& mesh, std::size_t i) { return to_string(mesh.dof_class(i)); })
      .def("__len__", &DomainMesh::num_nodes);

  m.def(
      "build_mesh",
      [](double a, double b, double collar, int n_interior, int n_collar, const std::string& grading) {
        return build_mesh(a, b, collar, n_interior, n_collar, parse_grading(grading));
      },
      py::arg("a"), py::arg("b"), py::arg("collar"), py::arg("n_interior"), py::arg("n_collar"),
      py::arg("grading") = "uniform");

  py::class_<AssembledSystem>(m, "AssembledSystem")
      .def_readonly("alpha", &AssembledSystem::alpha)
      .def_readonly("mass", &AssembledSystem::mass)
      .def_readonly("stiffness", &AssembledSystem::stiffness)
      .def_readonly("fractional", &AssembledSystem::fractional)
      .def_readonly("op", &AssembledSystem::op)
      .def_readonly("mesh", &AssembledSystem::mesh);

  m.def("assemble", &assemble, py::arg("mesh"), py::arg("measure"), py::arg("alpha"));
  m.def(
      "fractional_form",
      [](const DomainMesh& mesh, double s, bool omega_squared) {
        return fractional_form(mesh, s,
                               omega_squared ? InteractionRegion::omega_squared : InteractionRegion::q_region);
      },
      py::arg("mesh"), py::arg("s"), py::arg("omega_squared") = false);
  m.def(
      "assemble_load",
      [](const DomainMesh& mesh, double alpha, const std::string& f, const std::string& g, double h_a,
         double h_b) {
        return assemble_load(mesh, alpha, LoadData{FunctionPreset::parse(f), FunctionPreset::parse(g), h_a, h_b})
            .values;
      },
      py::arg("mesh"), py::arg("alpha"), py::arg("f") = "zero", py::arg("g") = "zero", py::arg("h_a") = 0.0,
      py::arg("h_b") = 0.0);
  m.def("energy", &energy, py::arg("system"), py::arg("u"), py::arg("load"));
  m.def("gagliardo_seminorm_sq", py::overload_cast<const AssembledSystem&, const Eigen::VectorXd&>(
                                     &gagliardo_seminorm_sq),
        py::arg("system"), py::arg("u"));

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("solution", &SolveReport::solution)
      .def_readonly("compatibility_defect", &SolveReport::compatibility_defect)
      .def_readonly("pin", &SolveReport::pin)
      .def_readonly("residual_norm", &SolveReport::residual_norm);
  m.def("check_compatibility", &check_compatibility, py::arg("load"));
  m.def(
      "solve", [](const AssembledSystem& sys, const Eigen::VectorXd& load, double pin) { return solve(sys, load, pin); },
      py::arg("system"), py::arg("load"), py::arg("pin") = 0.0);

  py::class_<ReducedOperator>(m, "ReducedOperator")
      .def_readonly("interior", &ReducedOperator::interior)
      .def_readonly("exterior", &ReducedOperator::exterior)
      .def_readonly("op", &ReducedOperator::op)
      .def_readonly("lift", &ReducedOperator::lift)
      .def("full_field", &ReducedOperator::full_field);
  m.def("schur_interior_operator", &schur_interior_operator, py::arg("system"));

  py::class_<EigenDecomposition>(m, "EigenDecomposition")
      .def_readonly("lambdas", &EigenDecomposition::lambdas)
      .def_readonly("modes", &EigenDecomposition::modes)
      .def_readonly("fields", &EigenDecomposition::fields);
  m.def("eigenpairs", py::overload_cast<const AssembledSystem&, int>(&eigenpairs), py::arg("system"),
        py::arg("k"));
  m.def("poincare_constant", &poincare_constant, py::arg("mesh"), py::arg("measure"));

  py::class_<HeatTrace>(m, "HeatTrace")
      .def_readonly("times", &HeatTrace::times)
      .def_readonly("mass", &HeatTrace::mass)
      .def_readonly("energy", &HeatTrace::energy)
      .def_readonly("deviation", &HeatTrace::deviation)
      .def_readonly("final_field", &HeatTrace::final_field);
  m.def(
      "evolve",
      [](const AssembledSystem& sys, const Eigen::VectorXd& u0, double dt, double t_end, const std::string& scheme) {
        return evolve(sys, u0, dt, t_end, parse_time_scheme(scheme));
      },
      py::arg("system"), py::arg("u0"), py::arg("dt"), py::arg("t_end"), py::arg("scheme") = "implicit-euler");

  py::class_<ExtensionProbe>(m, "ExtensionProbe")
      .def_readonly("points", &ExtensionProbe::points)
      .def_readonly("values", &ExtensionProbe::values)
      .def_readonly("normalized_neumann", &ExtensionProbe::normalized_neumann)
      .def_readonly("far_limit", &ExtensionProbe::far_limit);
  m.def(
      "extend",
      [](double a, double b, const SpectralMeasure& mu, const std::function<double(double)>& u0,
         const std::vector<double>& points) { return extend(KernelContext(Interval{a, b}), mu, u0, points); },
      py::arg("a"), py::arg("b"), py::arg("measure"), py::arg("u0"), py::arg("points"));

  m.def("per_s_interval", &per_s_interval, py::arg("a"), py::arg("b"), py::arg("s"));
  m.def(
      "superposed_perimeter",
      [](double a, double b, const SpectralMeasure& mu, const std::string& method) {
        const PerimeterReport r = superposed_perimeter(a, b, mu, parse_perimeter_method(method));
        std::vector<std::pair<double, double>> per_atom;
        for (const Atom& atom : r.per_atom) per_atom.emplace_back(atom.s, atom.weight);
        return py::make_tuple(r.superposed, per_atom);
      },
      py::arg("a"), py::arg("b"), py::arg("measure"), py::arg("method") = "analytic");

  m.def("canonical_config", [](const std::string& text) { return emit_config(parse_config(text)); },
        py::arg("text"));
  m.def(
      "verify",
      [](const std::string& config_text, std::uint64_t seed) {
        return run_verify(parse_config(config_text), seed).to_json().dump();
      },
      py::arg("config_text"), py::arg("seed") = 0);
  m.def(
      "run",
      [](const std::string& command, const std::string& config_path, std::uint64_t seed, const std::string& out) {
        std::ostringstream log, err;
        const int code = run_cli(command, config_path, seed, out, log, err);
        return py::make_tuple(code, log.str(), err.str());
      },
      py::arg("command"), py::arg("config_path"), py::arg("seed") = 0, py::arg("out") = "");
}
