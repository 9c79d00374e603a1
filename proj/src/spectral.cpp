#include "superlap/spectral.hpp"

#include <Eigen/Eigenvalues>

#include "superlap/errors.hpp"

namespace superlap {

namespace {

Eigen::MatrixXd block(const Eigen::MatrixXd& a, const std::vector<std::size_t>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = a(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                    static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
  return out;
}

Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solve_pencil(const Eigen::MatrixXd& a,
                                                                       const Eigen::MatrixXd& m) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, m);
  if (solver.info() != Eigen::Success)
    throw SingularityError("generalized eigensolver failed (mass matrix not positive definite?)");
  return solver;
}

}  // namespace

Eigen::MatrixXd interior_mass(const AssembledSystem& sys) {
  return block(sys.mass, sys.mesh.interior_dofs());
}

EigenDecomposition eigenpairs(const AssembledSystem& sys, int k) {
  return eigenpairs(sys, interior_operator(sys), k);
}

EigenDecomposition eigenpairs(const AssembledSystem& sys, const ReducedOperator& reduced, int k) {
  const auto n = static_cast<int>(reduced.interior.size());
  if (k < 1 || k > n) throw DomainError("eigenpairs: k must lie in [1, number of interior DOFs]");
  const auto solver = solve_pencil(reduced.op, interior_mass(sys));

  EigenDecomposition out;
  out.interior = reduced.interior;
  out.lambdas = solver.eigenvalues().head(k);
  out.modes = solver.eigenvectors().leftCols(k);
  for (int j = 0; j < k; ++j) {
    Eigen::Index arg = 0;
    out.modes.col(j).cwiseAbs().maxCoeff(&arg);
    if (out.modes(arg, j) < 0.0) out.modes.col(j) *= -1.0;
  }
  out.fields.resize(static_cast<Eigen::Index>(sys.mesh.num_nodes()), k);
  for (int j = 0; j < k; ++j) out.fields.col(j) = reduced.full_field(out.modes.col(j));
  return out;
}

double poincare_constant(const DomainMesh& mesh, const SpectralMeasure& measure) {
  if (measure.empty()) throw DomainError("poincare_constant: measure must be nontrivial");
  const std::vector<std::size_t> idx = mesh.interior_dofs();
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd form = Eigen::MatrixXd::Zero(n, n);
  for (const Atom& atom : measure.atoms())
    form += atom.weight * c_ns(1, atom.s) *
            block(fractional_form(mesh, atom.s, InteractionRegion::omega_squared), idx);
  const AssembledSystem mass_only = assemble(mesh, SpectralMeasure{}, 1.0);
  const auto solver = solve_pencil(form, block(mass_only.mass, idx));
  return 1.0 / solver.eigenvalues()(1);
}

}  // namespace superlap
