#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "superlap/assembly.hpp"
#include "superlap/kernel.hpp"

namespace superlap {

struct ExtensionProbe {
  std::vector<double> points;
  std::vector<double> values;              ///< u~ = E_u / E_1
  std::vector<double> normalized_neumann;  ///< N~ of the extended function (zero up to quadrature)
  double far_limit = 0.0;                  ///< u~ at b + 100 (b - a)
};

/// Exterior extension of u0 at `points` (all outside [a, b]).
ExtensionProbe extend(const KernelContext& ctx, const SpectralMeasure& measure,
                      const Function& u0, const std::vector<double>& points,
                      const QuadratureOptions& opts = {});

/// Piecewise-linear interpolant of interior nodal values (index_a..index_b).
Function interior_interpolant(const DomainMesh& mesh, const Eigen::VectorXd& interior_values);

/// Nodal field equal to u0 on [a, b] and to u~ at the exterior nodes.
Eigen::VectorXd extended_field(const DomainMesh& mesh, const SpectralMeasure& measure,
                               const Eigen::VectorXd& interior_values);

struct MinimalityReport {
  int trials = 0;
  int violations = 0;
  double base_energy = 0.0;  ///< superposed Gagliardo energy of u~
  double min_gap = 0.0;      ///< min over trials of energy(u~ + phi) - energy(u~)
  double tolerance = 0.0;    ///< 1e-8 * scale
};

/// Compares the superposed Gagliardo energy of u~ with `trials` random
/// perturbations supported on the exterior nodes.
MinimalityReport minimality_check(const AssembledSystem& sys,
                                  const Eigen::VectorXd& interior_values, int trials,
                                  std::uint64_t seed);

struct ContinuityReport {
  std::vector<double> points;  ///< b + (b - a) 2^{-j}
  std::vector<double> gaps;    ///< |u~(x_j) - u0(b)|
};

/// Approaches b from outside along b + (b - a) 2^{-j}, j = 1..levels, with
/// quadrature depth 12 + j.
ContinuityReport continuity_probe(const KernelContext& ctx, const SpectralMeasure& measure,
                                  const Function& u0, int levels);

}  // namespace superlap
