#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "superlap/spectral.hpp"

using namespace superlap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("P1 Neumann Laplacian eigenvalues", "[spectral]") {
  const int n = 16;
  const double h = 1.0 / n;
  const DomainMesh mesh = build_mesh(0.0, 1.0, 1.0, n, 4);
  const EigenDecomposition eig = eigenpairs(assemble(mesh, SpectralMeasure{}, 1.0), 5);
  CHECK(std::abs(eig.lambdas(0)) < 1e-10);
  // Discrete dispersion relation of linear elements with a consistent mass.
  for (int k = 1; k < 5; ++k) {
    const double c = std::cos(k * std::numbers::pi * h);
    CHECK_THAT(eig.lambdas(k), WithinRel(6.0 / (h * h) * (1.0 - c) / (2.0 + c), 1e-10));
  }
}

TEST_CASE("nonlocal spectrum structure", "[spectral]") {
  const DomainMesh mesh = build_mesh(0.0, 1.0, 4.0, 16, 16, Grading::boundary_graded);
  const AssembledSystem sys = assemble(mesh, SpectralMeasure::from_atoms(std::vector<Atom>{{0.5, 1.0}}), 0.0);
  const EigenDecomposition eig = eigenpairs(sys, 4);
  REQUIRE(eig.lambdas.size() == 4);
  CHECK(eig.lambdas(0) < 1e-8 * eig.lambdas(1));
  for (int k = 1; k < 4; ++k) CHECK(eig.lambdas(k) >= eig.lambdas(k - 1));
  const Eigen::MatrixXd m = interior_mass(sys);
  const Eigen::MatrixXd gram = eig.modes.transpose() * m * eig.modes;
  CHECK((gram - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-10);
  const Eigen::VectorXd first = eig.modes.col(0);
  CHECK(first.minCoeff() > 0.0);
  CHECK((first.maxCoeff() - first.minCoeff()) < 1e-8 * first.maxCoeff());
  CHECK(eig.fields.rows() == static_cast<Eigen::Index>(mesh.num_nodes()));
}

TEST_CASE("Poincare constant bounds the variance", "[spectral]") {
  const DomainMesh mesh = build_mesh(0.0, 1.0, 1.0, 16, 4);
  const SpectralMeasure mu = SpectralMeasure::from_atoms(std::vector<Atom>{{0.25, 1.0}, {0.75, 1.0}});
  const double cp = poincare_constant(mesh, mu);
  CHECK(cp > 0.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const AssembledSystem sys = assemble(mesh, mu, 0.0);
  const Eigen::MatrixXd m = interior_mass(sys);
  const auto idx = mesh.interior_dofs();
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.num_nodes()));
    Eigen::VectorXd u(static_cast<Eigen::Index>(idx.size()));
    for (Eigen::Index k = 0; k < u.size(); ++k) u(k) = full(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)])) = unit(rng);
    const double mean = u.dot(m * Eigen::VectorXd::Ones(u.size()));
    const Eigen::VectorXd centered = u - mean * Eigen::VectorXd::Ones(u.size());
    double form = 0.0;
    for (const Atom& a : mu.atoms())
      form += a.weight * c_ns(1, a.s) * full.dot(fractional_form(mesh, a.s, InteractionRegion::omega_squared) * full);
    CHECK(centered.dot(m * centered) <= cp * form * (1.0 + 1e-12));
  }
}
