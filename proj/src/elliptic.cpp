#include "superlap/elliptic.hpp"

#include <cmath>
#include <sstream>

#include "superlap/errors.hpp"

namespace superlap {

namespace {

Eigen::MatrixXd gather(const Eigen::MatrixXd& a, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          a(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
  return out;
}

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<std::size_t>& idx) {
  Eigen::VectorXd out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(idx[i]));
  return out;
}

// Solves (A + beta c c^T) u = rhs + beta c target for SPD-after-bordering A.
Eigen::VectorXd bordered_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& c,
                               const Eigen::VectorXd& rhs, double target) {
  const double n = static_cast<double>(a.rows());
  const double diag = a.diagonal().cwiseAbs().mean();
  const double beta = (diag > 0.0 ? diag : 1.0) / (c.squaredNorm() / n);
  Eigen::MatrixXd bordered = a;
  bordered.noalias() += beta * c * c.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(bordered);
  if (llt.info() != Eigen::Success)
    throw SingularityError("solve: Cholesky factorization of the bordered operator failed");
  return llt.solve(rhs + beta * target * c);
}

}  // namespace

double check_compatibility(const Eigen::VectorXd& load) { return load.sum(); }

double default_compatibility_tolerance(const Eigen::VectorXd& load) {
  return std::max(1e-8 * load.cwiseAbs().sum(), 1e-14);
}

Eigen::VectorXd omega_weights(const DomainMesh& mesh) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.num_nodes()));
  for (std::size_t e = mesh.index_a(); e < mesh.index_b(); ++e) {
    const double half = 0.5 * mesh.width(e);
    c(static_cast<Eigen::Index>(e)) += half;
    c(static_cast<Eigen::Index>(e + 1)) += half;
  }
  return c;
}

double omega_mean(const DomainMesh& mesh, const Eigen::VectorXd& u) {
  if (u.size() != static_cast<Eigen::Index>(mesh.num_nodes()))
    throw DomainError("omega_mean: dimension mismatch");
  return omega_weights(mesh).dot(u) / mesh.omega().length();
}

SolveReport solve(const AssembledSystem& sys, const Eigen::VectorXd& load, double pin,
                  std::optional<double> tol_compat) {
  const DomainMesh& mesh = sys.mesh;
  const auto n = static_cast<Eigen::Index>(mesh.num_nodes());
  if (load.size() != n) throw DomainError("solve: load vector has the wrong size");
  if (!std::isfinite(pin)) throw DomainError("solve: pin must be finite");

  const double defect = check_compatibility(load);
  const double tol = tol_compat.value_or(default_compatibility_tolerance(load));
  auto reject = [&](double value, const std::string& detail) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "incompatible data: " << detail << " (defect " << value
        << "); solvability requires int_Omega f + int_ext g + alpha int_dOmega h = 0";
    throw CompatibilityError(msg.str(), value);
  };
  if (std::abs(defect) > tol) reject(defect, "load does not sum to zero");

  SolveReport report;
  report.compatibility_defect = defect;
  report.pin = pin;
  const double length = mesh.omega().length();
  const Eigen::VectorXd c = omega_weights(mesh);

  if (sys.has_nonlocal_part()) {
    const Eigen::VectorXd projected = load.array() - load.sum() / static_cast<double>(n);
    report.solution = bordered_solve(sys.op, c, projected, pin * length);
    report.residual_norm = (sys.op * report.solution - projected).norm();
    return report;
  }

  // Without a nonlocal part the exterior rows vanish: exterior load cannot be
  // balanced, and exterior values are set to the constant continuation.
  const std::vector<std::size_t> interior = mesh.interior_dofs();
  const std::vector<std::size_t> exterior = mesh.exterior_dofs();
  const Eigen::VectorXd f_ext = gather(load, exterior);
  if (f_ext.cwiseAbs().maxCoeff() > tol) reject(f_ext.sum(), "exterior load without a nonlocal part");
  const Eigen::VectorXd f_int = gather(load, interior);
  const Eigen::VectorXd projected =
      f_int.array() - f_int.sum() / static_cast<double>(f_int.size());
  const Eigen::MatrixXd a_ii = gather(sys.op, interior, interior);
  const Eigen::VectorXd u_int = bordered_solve(a_ii, gather(c, interior), projected, pin * length);
  report.residual_norm = (a_ii * u_int - projected).norm();
  report.solution.resize(n);
  for (std::size_t k = 0; k < interior.size(); ++k)
    report.solution(static_cast<Eigen::Index>(interior[k])) = u_int(static_cast<Eigen::Index>(k));
  for (std::size_t i : exterior)
    report.solution(static_cast<Eigen::Index>(i)) =
        report.solution(static_cast<Eigen::Index>(i < mesh.index_a() ? mesh.index_a() : mesh.index_b()));
  return report;
}

Eigen::VectorXd ReducedOperator::full_field(const Eigen::VectorXd& interior_values) const {
  if (interior_values.size() != static_cast<Eigen::Index>(interior.size()))
    throw DomainError("full_field: interior vector has the wrong size");
  Eigen::VectorXd full(static_cast<Eigen::Index>(interior.size() + exterior.size()));
  const Eigen::VectorXd ext = lift * interior_values;
  for (std::size_t k = 0; k < interior.size(); ++k)
    full(static_cast<Eigen::Index>(interior[k])) = interior_values(static_cast<Eigen::Index>(k));
  for (std::size_t k = 0; k < exterior.size(); ++k)
    full(static_cast<Eigen::Index>(exterior[k])) = ext(static_cast<Eigen::Index>(k));
  return full;
}

ReducedOperator schur_interior_operator(const AssembledSystem& sys) {
  if (!sys.has_nonlocal_part())
    throw DomainError("schur_interior_operator: trivial measure, no exterior coupling");
  ReducedOperator red;
  red.interior = sys.mesh.interior_dofs();
  red.exterior = sys.mesh.exterior_dofs();
  const Eigen::MatrixXd a_ee = gather(sys.op, red.exterior, red.exterior);
  const Eigen::MatrixXd a_ei = gather(sys.op, red.exterior, red.interior);
  Eigen::LLT<Eigen::MatrixXd> llt(a_ee);
  if (llt.info() != Eigen::Success)
    throw SingularityError("schur_interior_operator: exterior block is not positive definite");
  red.lift = -llt.solve(a_ei);
  red.op = gather(sys.op, red.interior, red.interior);
  red.op.noalias() += a_ei.transpose() * red.lift;
  red.op = 0.5 * (red.op + red.op.transpose()).eval();
  return red;
}

ReducedOperator interior_operator(const AssembledSystem& sys) {
  if (sys.has_nonlocal_part()) return schur_interior_operator(sys);
  ReducedOperator red;
  red.interior = sys.mesh.interior_dofs();
  red.exterior = sys.mesh.exterior_dofs();
  red.op = gather(sys.op, red.interior, red.interior);
  red.lift = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(red.exterior.size()),
                                   static_cast<Eigen::Index>(red.interior.size()));
  for (std::size_t k = 0; k < red.exterior.size(); ++k)
    red.lift(static_cast<Eigen::Index>(k),
             red.exterior[k] < sys.mesh.index_a() ? 0 : red.lift.cols() - 1) = 1.0;
  return red;
}

}  // namespace superlap
