#include "superlap/extension.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "superlap/errors.hpp"
#include "random_util.hpp"

namespace superlap {

ExtensionProbe extend(const KernelContext& ctx, const SpectralMeasure& measure,
                      const Function& u0, const std::vector<double>& points,
                      const QuadratureOptions& opts) {
  if (measure.empty()) throw DomainError("extend: the measure must be nontrivial");
  const Interval& omega = ctx.omega();
  ExtensionProbe probe;
  probe.points = points;
  for (double x : points) {
    const ExteriorPoint p = ExteriorPoint::from_x(omega, x);
    const ExteriorMoments m = exterior_moments(ctx, measure, u0, p, opts);
    const double value = m.e_u / m.e_1;
    probe.values.push_back(value);
    probe.normalized_neumann.push_back((value * m.e_1 - m.e_u) /
                                       superposed_weight(ctx, measure, p));
  }
  probe.far_limit =
      extension_ratio(ctx, measure, u0, ExteriorPoint{Side::right, 100.0 * omega.length()}, opts);
  return probe;
}

Function interior_interpolant(const DomainMesh& mesh, const Eigen::VectorXd& interior_values) {
  const std::size_t ia = mesh.index_a(), ib = mesh.index_b();
  if (interior_values.size() != static_cast<Eigen::Index>(ib - ia + 1))
    throw DomainError("interior_interpolant: wrong number of interior values");
  std::vector<double> nodes(mesh.nodes().begin() + static_cast<std::ptrdiff_t>(ia),
                            mesh.nodes().begin() + static_cast<std::ptrdiff_t>(ib) + 1);
  std::vector<double> values(interior_values.data(),
                             interior_values.data() + interior_values.size());
  return [nodes = std::move(nodes), values = std::move(values)](double x) {
    if (x <= nodes.front()) return values.front();
    if (x >= nodes.back()) return values.back();
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    const auto right = static_cast<std::size_t>(it - nodes.begin());
    const double t = (x - nodes[right - 1]) / (nodes[right] - nodes[right - 1]);
    return (1.0 - t) * values[right - 1] + t * values[right];
  };
}

Eigen::VectorXd extended_field(const DomainMesh& mesh, const SpectralMeasure& measure,
                               const Eigen::VectorXd& interior_values) {
  const Function u0 = interior_interpolant(mesh, interior_values);
  const KernelContext ctx(mesh.omega());
  Eigen::VectorXd field(static_cast<Eigen::Index>(mesh.num_nodes()));
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    const double x = mesh.nodes()[i];
    field(static_cast<Eigen::Index>(i)) =
        mesh.is_exterior(i) ? extension_ratio(ctx, measure, u0, x) : u0(x);
  }
  return field;
}

MinimalityReport minimality_check(const AssembledSystem& sys,
                                  const Eigen::VectorXd& interior_values, int trials,
                                  std::uint64_t seed) {
  if (trials < 1) throw DomainError("minimality_check: need at least one trial");
  const DomainMesh& mesh = sys.mesh;
  const Eigen::VectorXd base = extended_field(mesh, sys.measure, interior_values);
  const double amplitude = std::max(1.0, interior_values.maxCoeff() - interior_values.minCoeff());
  const std::vector<std::size_t> exterior = mesh.exterior_dofs();

  MinimalityReport report;
  report.trials = trials;
  report.base_energy = gagliardo_seminorm_sq(sys, base);
  report.min_gap = INFINITY;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(base.size());
    for (std::size_t i : exterior) {
      phi(static_cast<Eigen::Index>(i)) = amplitude * (2.0 * detail::unit_uniform(rng) - 1.0);
    }
    const double perturbed = gagliardo_seminorm_sq(sys, base + phi);
    const double gap = perturbed - report.base_energy;
    const double tol = 1e-8 * (report.base_energy + gagliardo_seminorm_sq(sys, phi));
    report.tolerance = std::max(report.tolerance, tol);
    report.min_gap = std::min(report.min_gap, gap);
    if (gap < -tol) ++report.violations;
  }
  return report;
}

ContinuityReport continuity_probe(const KernelContext& ctx, const SpectralMeasure& measure,
                                  const Function& u0, int levels) {
  if (levels < 1) throw DomainError("continuity_probe: need at least one level");
  const Interval& omega = ctx.omega();
  const double boundary_value = u0(omega.b);
  ContinuityReport report;
  for (int j = 1; j <= levels; ++j) {
    const ExteriorPoint p{Side::right, omega.length() * std::ldexp(1.0, -j)};
    const QuadratureOptions opts{12 + j, 16};
    report.points.push_back(p.x(omega));
    report.gaps.push_back(std::abs(extension_ratio(ctx, measure, u0, p, opts) - boundary_value));
  }
  return report;
}

}  // namespace superlap
