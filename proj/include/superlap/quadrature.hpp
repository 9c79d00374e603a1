#pragma once

#include <functional>
#include <vector>

namespace superlap::quad {

/// Nodes and weights of a rule on the reference interval [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n). Rules for n <= 64
/// are cached; the returned reference stays valid for the program lifetime.
const Rule& gauss_legendre(int n);

/// Fixed-rule integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Rule& rule);

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration on a finite interval.
AdaptiveResult adaptive(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, double rel_tol,
                        int max_subdivisions = 2000);

}  // namespace superlap::quad
