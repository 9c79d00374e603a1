#pragma once

#include <Eigen/Dense>
#include <vector>

#include "superlap/function_preset.hpp"
#include "superlap/mesh.hpp"
#include "superlap/spectral_measure.hpp"

namespace superlap {

/// Which part of R x R the double integral runs over.
///   q_region:      all pairs with at least one point in Omega (Q).
///   omega_squared: Omega x Omega only.
enum class InteractionRegion { q_region, omega_squared };

/// Raw fractional form of order s on the P1 basis,
///   G_ij = iint_region (phi_i(x)-phi_i(y)) (phi_j(x)-phi_j(y)) |x-y|^{-1-2s},
/// without the constant c_{1,s}.
///
/// Element pairs that touch are integrated by exploiting the homogeneity of
/// the integrand around the shared point: one outer L-shaped layer is
/// integrated and divided by 1 - 2^{-(3-2s)}. Coincident elements use the
/// closed form; separated pairs use tensor Gauss rules, bisecting until each
/// block is well separated from the diagonal. Interactions with the constant
/// tails beyond the collar are integrated in closed form in y.
Eigen::MatrixXd fractional_form(const DomainMesh& mesh, double s,
                                InteractionRegion region = InteractionRegion::q_region);

/// Discrete bilinear form of the weak formulation. All matrices are
/// num_nodes x num_nodes; `mass` and `stiffness` only see Omega.
struct AssembledSystem {
  DomainMesh mesh;
  SpectralMeasure measure;
  double alpha = 0.0;
  Eigen::MatrixXd mass;
  Eigen::MatrixXd stiffness;
  std::vector<Eigen::MatrixXd> fractional;  ///< (c_{1,s_k}/2) G^Q per atom
  Eigen::MatrixXd op;  ///< alpha K + sum_k w_k fractional[k]

  bool has_nonlocal_part() const { return !measure.empty(); }
};

AssembledSystem assemble(const DomainMesh& mesh, const SpectralMeasure& measure,
                         double alpha);

/// Volume data f, exterior data g (integrated over the collar only) and
/// boundary data (h_a, h_b).
struct LoadData {
  FunctionPreset f;
  FunctionPreset g;
  double h_a = 0.0;
  double h_b = 0.0;
};

struct LoadVector {
  Eigen::VectorXd values;
  /// g is nonzero; whatever it does beyond the truncated collar is dropped.
  bool g_truncated = false;
};

/// F_i = int_Omega f phi_i + int_collar g phi_i + alpha (h_a phi_i(a) + h_b phi_i(b)).
LoadVector assemble_load(const DomainMesh& mesh, double alpha, const LoadData& data);

/// I(u) = 1/2 u^T A u - F . u.
double energy(const AssembledSystem& sys, const Eigen::VectorXd& u,
              const Eigen::VectorXd& load);

/// int c_{1,s} iint_Q |u(x)-u(y)|^2 |x-y|^{-1-2s} dmu(s) for the nodal field u.
double gagliardo_seminorm_sq(const AssembledSystem& sys, const Eigen::VectorXd& u);
double gagliardo_seminorm_sq(const DomainMesh& mesh, const SpectralMeasure& measure,
                             const Eigen::VectorXd& u);

}  // namespace superlap
