#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "superlap/errors.hpp"
#include "superlap/heat.hpp"
#include "superlap/spectral.hpp"

using namespace superlap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

AssembledSystem nonlocal_system() {
  const DomainMesh mesh = build_mesh(0.0, 1.0, 2.0, 12, 12);
  return assemble(mesh, SpectralMeasure::from_atoms(std::vector<Atom>{{0.4, 1.0}, {0.7, 0.5}}), 0.2);
}

}  // namespace

TEST_CASE("eigenmodes decay by the scheme's amplification factor", "[heat]") {
  const AssembledSystem sys = nonlocal_system();
  const EigenDecomposition eig = eigenpairs(sys, 3);
  const double dt = 0.05, lambda = eig.lambdas(2);
  const Eigen::VectorXd u0 = eig.modes.col(2);
  const int steps = 8;

  const HeatTrace ie = evolve(sys, u0, dt, steps * dt, TimeScheme::implicit_euler);
  const double g_ie = std::pow(1.0 + dt * lambda, -steps);
  CHECK((ie.final_interior - g_ie * u0).norm() < 1e-10 * u0.norm());

  const HeatTrace cn = evolve(sys, u0, dt, steps * dt, TimeScheme::crank_nicolson);
  const double g_cn = std::pow((1.0 - 0.5 * dt * lambda) / (1.0 + 0.5 * dt * lambda), steps);
  CHECK((cn.final_interior - g_cn * u0).norm() < 1e-10 * u0.norm());
  CHECK(cn.times.size() == steps + 1);
  CHECK_THAT(cn.times.back(), WithinRel(0.4, 1e-14));
}

TEST_CASE("mass is conserved and energy dissipated", "[heat]") {
  const AssembledSystem sys = nonlocal_system();
  const HeatStepper stepper(sys, 0.01, TimeScheme::implicit_euler);
  const auto& interior = stepper.reduced().interior;
  Eigen::VectorXd u0(static_cast<Eigen::Index>(interior.size()));
  for (std::size_t k = 0; k < interior.size(); ++k) {
    const double x = sys.mesh.nodes()[interior[k]];
    u0(static_cast<Eigen::Index>(k)) = x < 0.3 ? 2.0 : -x * x;
  }
  const HeatTrace trace = evolve(stepper, u0, 1.0);
  REQUIRE(trace.times.size() == 101);
  for (double m : trace.mass) CHECK_THAT(m, WithinAbs(trace.mass.front(), 1e-13));
  for (std::size_t n = 1; n < trace.times.size(); ++n) {
    CHECK(trace.energy[n] <= trace.energy[n - 1]);
    CHECK(trace.deviation[n] <= trace.deviation[n - 1]);
  }
  CHECK(trace.final_field.size() == static_cast<Eigen::Index>(sys.mesh.num_nodes()));
}

TEST_CASE("scheme names and arguments", "[heat]") {
  CHECK(parse_time_scheme("crank-nicolson") == TimeScheme::crank_nicolson);
  CHECK(to_string(TimeScheme::implicit_euler) == "implicit-euler");
  CHECK_THROWS(parse_time_scheme("leapfrog"));
  CHECK_THROWS_AS(HeatStepper(nonlocal_system(), -1.0, TimeScheme::implicit_euler), DomainError);
}
