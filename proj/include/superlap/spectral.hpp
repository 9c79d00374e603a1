#pragma once

#include <Eigen/Dense>

#include "superlap/elliptic.hpp"

namespace superlap {

struct EigenDecomposition {
  Eigen::VectorXd lambdas;  ///< ascending
  Eigen::MatrixXd modes;    ///< interior nodal values, M-orthonormal columns
  Eigen::MatrixXd fields;   ///< full nodal fields (exterior lifted), one column per mode
  std::vector<std::size_t> interior;
};

/// Interior block of the mass matrix.
Eigen::MatrixXd interior_mass(const AssembledSystem& sys);

/// The k smallest eigenpairs of A~ u = lambda M u.
EigenDecomposition eigenpairs(const AssembledSystem& sys, int k);

/// Same pencil with A~ already reduced (reuses a Schur complement).
EigenDecomposition eigenpairs(const AssembledSystem& sys, const ReducedOperator& reduced, int k);

/// Smallest c with int_Omega |u - mean|^2 <= c int c_{1,s} iint_{Omega x Omega} ... dmu(s),
/// realized as 1 / lambda_2 of the Omega x Omega form against the mass matrix.
double poincare_constant(const DomainMesh& mesh, const SpectralMeasure& measure);

}  // namespace superlap
