#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "superlap/assembly.hpp"

namespace superlap {

struct SolveReport {
  Eigen::VectorXd solution;  ///< nodal values on all DOFs
  double compatibility_defect = 0.0;
  double pin = 0.0;  ///< prescribed mean over Omega
  double residual_norm = 0.0;
};

/// Sum of the load entries, i.e. int f + int g + alpha int h.
double check_compatibility(const Eigen::VectorXd& load);

/// Default tolerance for the defect: 1e-8 times sum |F_i|.
double default_compatibility_tolerance(const Eigen::VectorXd& load);

/// c_i = int_Omega phi_i.
Eigen::VectorXd omega_weights(const DomainMesh& mesh);

/// Mean over Omega of a nodal field.
double omega_mean(const DomainMesh& mesh, const Eigen::VectorXd& u);

/// Solves A u = F with mean_Omega u = pin. Throws CompatibilityError when the
/// defect exceeds the tolerance and SingularityError if the factorization fails.
SolveReport solve(const AssembledSystem& sys, const Eigen::VectorXd& load, double pin = 0.0,
                  std::optional<double> tol_compat = std::nullopt);

/// Operator restricted to the DOFs of [a, b] after eliminating the exterior.
struct ReducedOperator {
  std::vector<std::size_t> interior;
  std::vector<std::size_t> exterior;
  Eigen::MatrixXd op;    ///< A~ on interior DOFs
  Eigen::MatrixXd lift;  ///< exterior values = lift * interior values

  /// Interior values scattered into a full nodal field with lifted exterior.
  Eigen::VectorXd full_field(const Eigen::VectorXd& interior_values) const;
};

/// A~ = A_ii - A_ie A_ee^{-1} A_ei and lift = -A_ee^{-1} A_ei. Requires a
/// nontrivial measure.
ReducedOperator schur_interior_operator(const AssembledSystem& sys);

/// Schur reduction when mu is nontrivial; otherwise A_ii with exterior values
/// copied from the nearest boundary node.
ReducedOperator interior_operator(const AssembledSystem& sys);

}  // namespace superlap
