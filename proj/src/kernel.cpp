#include "superlap/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "superlap/errors.hpp"
#include "superlap/quadrature.hpp"

namespace superlap {

double c_ns(int dim, double s) {
  if (dim < 1) throw DomainError("c_ns: dimension must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("c_ns: s must lie in (0,1)");
  const double n = dim;
  const double log_c = (2.0 * s - 1.0) * std::numbers::ln2 + std::log(s) +
                       std::lgamma(0.5 * (n + 2.0 * s)) -
                       0.5 * n * std::log(std::numbers::pi) - std::lgamma(1.0 - s);
  return std::exp(log_c);
}

ExteriorPoint ExteriorPoint::from_x(const Interval& omega, double x) {
  if (!std::isfinite(x) || omega.contains_closed(x))
    throw DomainError("exterior point required, got x inside [a,b]");
  if (x > omega.b) return {Side::right, x - omega.b};
  return {Side::left, omega.a - x};
}

double ExteriorPoint::x(const Interval& omega) const {
  return side == Side::right ? omega.b + distance : omega.a - distance;
}

KernelContext::KernelContext(Interval omega, int dim) : omega_(omega), dim_(dim) {
  if (!(omega.length() > 0.0) || !std::isfinite(omega.a) || !std::isfinite(omega.b))
    throw DomainError("kernel context: need a < b, both finite");
  if (dim < 1) throw DomainError("kernel context: dimension must be >= 1");
}

namespace {

void check_point(ExteriorPoint p) {
  if (!(p.distance > 0.0) || !std::isfinite(p.distance))
    throw DomainError("exterior point must lie strictly outside [a,b]");
}

// Integral of |x-y|^{-1-2s} over an interval of length L whose near end is at
// distance d from x.
double kernel_mass(double s, double d, double length) {
  // (d^{-2s} - (d+L)^{-2s}) / (2s), written to stay accurate when L << d.
  const double two_s = 2.0 * s;
  return -std::pow(d, -two_s) * std::expm1(-two_s * std::log1p(length / d)) / two_s;
}

// Quadrature nodes over Omega as offsets tau from the endpoint nearest to p.
struct GradedNodes {
  std::vector<double> offset;  // tau in (0, L)
  std::vector<double> weight;
};

GradedNodes graded_nodes(double length, double distance, const QuadratureOptions& opts) {
  int depth = opts.depth;
  if (distance < length) {
    const int needed = static_cast<int>(std::ceil(std::log2(length / distance))) + 4;
    depth = std::max(depth, needed);
  }
  depth = std::min(depth, 1000);
  const quad::Rule& rule = quad::gauss_legendre(opts.points);
  GradedNodes nodes;
  nodes.offset.reserve(static_cast<std::size_t>(depth + 1) * rule.size());
  nodes.weight.reserve(nodes.offset.capacity());
  auto add_panel = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      nodes.offset.push_back(c + h * rule.nodes[q]);
      nodes.weight.push_back(h * rule.weights[q]);
    }
  };
  double hi = length;
  for (int k = 0; k < depth; ++k) {
    const double lo = 0.5 * hi;
    add_panel(lo, hi);
    hi = lo;
  }
  add_panel(0.0, hi);
  return nodes;
}

double interior_coordinate(const Interval& omega, Side side, double offset) {
  return side == Side::right ? omega.b - offset : omega.a + offset;
}

}  // namespace

double w_s_omega(const KernelContext& ctx, double s, ExteriorPoint p) {
  check_point(p);
  return c_ns(1, s) * kernel_mass(s, p.distance, ctx.omega().length());
}

double w_s_omega(const KernelContext& ctx, double s, double x) {
  return w_s_omega(ctx, s, ExteriorPoint::from_x(ctx.omega(), x));
}

double superposed_weight(const KernelContext& ctx, const SpectralMeasure& measure,
                         ExteriorPoint p) {
  double total = 0.0;
  for (const Atom& atom : measure.atoms())
    total += atom.weight * w_s_omega(ctx, atom.s, p);
  return total;
}

ExteriorMoments exterior_moments(const KernelContext& ctx,
                                 const SpectralMeasure& measure, const Function& u,
                                 ExteriorPoint p, const QuadratureOptions& opts) {
  check_point(p);
  if (measure.empty()) throw DomainError("exterior moments need a nonempty measure");
  const Interval& omega = ctx.omega();
  const GradedNodes nodes = graded_nodes(omega.length(), p.distance, opts);

  std::vector<double> u_values(nodes.offset.size());
  for (std::size_t q = 0; q < nodes.offset.size(); ++q)
    u_values[q] = u(interior_coordinate(omega, p.side, nodes.offset[q]));

  ExteriorMoments moments;
  for (const Atom& atom : measure.atoms()) {
    const double exponent = -1.0 - 2.0 * atom.s;
    const double scale = atom.weight * c_ns(1, atom.s);
    double e_u = 0.0;
    double e_1 = 0.0;
    for (std::size_t q = 0; q < nodes.offset.size(); ++q) {
      const double k = nodes.weight[q] * std::pow(p.distance + nodes.offset[q], exponent);
      e_u += k * u_values[q];
      e_1 += k;
    }
    moments.e_u += scale * e_u;
    moments.e_1 += scale * e_1;
  }
  return moments;
}

double extension_ratio(const KernelContext& ctx, const SpectralMeasure& measure,
                       const Function& u, ExteriorPoint p,
                       const QuadratureOptions& opts) {
  const ExteriorMoments m = exterior_moments(ctx, measure, u, p, opts);
  return m.e_u / m.e_1;
}

double extension_ratio(const KernelContext& ctx, const SpectralMeasure& measure,
                       const Function& u, double x, const QuadratureOptions& opts) {
  return extension_ratio(ctx, measure, u, ExteriorPoint::from_x(ctx.omega(), x), opts);
}

double neumann_derivative(const KernelContext& ctx, double s, const Function& u,
                          double u_at_point, ExteriorPoint p,
                          const QuadratureOptions& opts) {
  check_point(p);
  const Interval& omega = ctx.omega();
  const GradedNodes nodes = graded_nodes(omega.length(), p.distance, opts);
  const double exponent = -1.0 - 2.0 * s;
  double sum = 0.0;
  for (std::size_t q = 0; q < nodes.offset.size(); ++q) {
    const double y = interior_coordinate(omega, p.side, nodes.offset[q]);
    sum += nodes.weight[q] * (u_at_point - u(y)) *
           std::pow(p.distance + nodes.offset[q], exponent);
  }
  return c_ns(1, s) * sum;
}

double neumann_residual(const KernelContext& ctx, const SpectralMeasure& measure,
                        const Function& u, double u_at_point, ExteriorPoint p,
                        const QuadratureOptions& opts) {
  check_point(p);
  const Interval& omega = ctx.omega();
  const GradedNodes nodes = graded_nodes(omega.length(), p.distance, opts);
  std::vector<double> differences(nodes.offset.size());
  for (std::size_t q = 0; q < nodes.offset.size(); ++q)
    differences[q] =
        nodes.weight[q] * (u_at_point - u(interior_coordinate(omega, p.side, nodes.offset[q])));

  double total = 0.0;
  for (const Atom& atom : measure.atoms()) {
    const double exponent = -1.0 - 2.0 * atom.s;
    double sum = 0.0;
    for (std::size_t q = 0; q < nodes.offset.size(); ++q)
      sum += differences[q] * std::pow(p.distance + nodes.offset[q], exponent);
    total += atom.weight * c_ns(1, atom.s) * sum;
  }
  return total;
}

double neumann_residual(const KernelContext& ctx, const SpectralMeasure& measure,
                        const Function& u, double x, const QuadratureOptions& opts) {
  const ExteriorPoint p = ExteriorPoint::from_x(ctx.omega(), x);
  return neumann_residual(ctx, measure, u, u(x), p, opts);
}

double normalized_neumann(const KernelContext& ctx, const SpectralMeasure& measure,
                          const Function& u, double x, const QuadratureOptions& opts) {
  if (measure.empty()) throw DomainError("normalized Neumann function needs a nonempty measure");
  const ExteriorPoint p = ExteriorPoint::from_x(ctx.omega(), x);
  return neumann_residual(ctx, measure, u, u(x), p, opts) / superposed_weight(ctx, measure, p);
}

}  // namespace superlap
