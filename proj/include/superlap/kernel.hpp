#pragma once

#include <functional>

#include "superlap/spectral_measure.hpp"

namespace superlap {

/// Normalization constant c_{N,s} of the fractional Laplacian, evaluated as
/// 2^{2s-1} s Gamma((N+2s)/2) / (pi^{N/2} Gamma(1-s)) through log-Gamma.
double c_ns(int dim, double s);

struct Interval {
  double a = 0.0;
  double b = 1.0;
  double length() const { return b - a; }
  bool contains_closed(double x) const { return x >= a && x <= b; }
};

enum class Side { left, right };

/// A point of R \ [a,b] stored as (side, distance to the nearest endpoint),
/// so that points extremely close to the boundary keep full precision.
struct ExteriorPoint {
  Side side = Side::right;
  double distance = 1.0;

  static ExteriorPoint from_x(const Interval& omega, double x);
  double x(const Interval& omega) const;
};

class KernelContext {
 public:
  explicit KernelContext(Interval omega, int dim = 1);
  const Interval& omega() const { return omega_; }
  int dim() const { return dim_; }

 private:
  Interval omega_;
  int dim_;
};

/// Composite Gauss rule over Omega, panels halving toward the endpoint
/// nearest to the evaluation point. `depth` is raised automatically so the
/// smallest panel is below the distance to the boundary.
struct QuadratureOptions {
  int depth = 12;
  int points = 16;
};

/// w_{s,Omega}(x) = c_{1,s} int_Omega |x-y|^{-1-2s} dy, closed form.
double w_s_omega(const KernelContext& ctx, double s, double x);
double w_s_omega(const KernelContext& ctx, double s, ExteriorPoint p);

/// int w_{s,Omega}(x) dmu(s), the denominator of the normalized Neumann function.
double superposed_weight(const KernelContext& ctx, const SpectralMeasure& measure,
                         ExteriorPoint p);

using Function = std::function<double(double)>;

/// E_u(x) and E_1(x) computed on the same nodes.
struct ExteriorMoments {
  double e_u = 0.0;
  double e_1 = 0.0;
};

ExteriorMoments exterior_moments(const KernelContext& ctx,
                                 const SpectralMeasure& measure, const Function& u,
                                 ExteriorPoint p, const QuadratureOptions& opts = {});

/// u~(x) = E_u(x) / E_1(x): the exterior value cancelling the superposed
/// Neumann residual at x.
double extension_ratio(const KernelContext& ctx, const SpectralMeasure& measure,
                       const Function& u, double x,
                       const QuadratureOptions& opts = {});
double extension_ratio(const KernelContext& ctx, const SpectralMeasure& measure,
                       const Function& u, ExteriorPoint p,
                       const QuadratureOptions& opts = {});

/// N_s u(x) = c_{1,s} int_Omega (u(x) - u(y)) |x-y|^{-1-2s} dy for one order s.
double neumann_derivative(const KernelContext& ctx, double s, const Function& u,
                          double u_at_point, ExteriorPoint p,
                          const QuadratureOptions& opts = {});

/// int N_s u(x) dmu(s).
double neumann_residual(const KernelContext& ctx, const SpectralMeasure& measure,
                        const Function& u, double x,
                        const QuadratureOptions& opts = {});
double neumann_residual(const KernelContext& ctx, const SpectralMeasure& measure,
                        const Function& u, double u_at_point, ExteriorPoint p,
                        const QuadratureOptions& opts = {});

/// Neumann residual divided by the superposed kernel weight (closed form).
double normalized_neumann(const KernelContext& ctx, const SpectralMeasure& measure,
                          const Function& u, double x,
                          const QuadratureOptions& opts = {});

}  // namespace superlap
