#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "superlap/kernel.hpp"

namespace superlap {

enum class Grading { uniform, boundary_graded };

/// Boundary nodes a and b count as interior degrees of freedom.
enum class DofClass { interior, boundary_a, boundary_b, exterior };

struct Element {
  std::size_t left = 0;
  std::size_t right = 0;
};

/// Piecewise-linear mesh of [a - R, b + R] with Omega = (a, b) resolved
/// exactly. The two outermost hat functions extend by the constant 1 past
/// the truncation points, so the nodal basis is a partition of unity on R.
class DomainMesh {
 public:
  DomainMesh(double a, double b, double collar, std::vector<double> nodes);

  const Interval& omega() const { return omega_; }
  double collar() const { return collar_; }
  const std::vector<double>& nodes() const { return nodes_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_elements() const { return nodes_.size() - 1; }
  Element element(std::size_t e) const { return {e, e + 1}; }
  double width(std::size_t e) const { return nodes_[e + 1] - nodes_[e]; }

  /// True when the element lies in [a, b].
  bool in_omega(std::size_t e) const { return e >= index_a_ && e < index_b_; }

  DofClass dof_class(std::size_t i) const;
  bool is_exterior(std::size_t i) const { return i < index_a_ || i > index_b_; }
  std::size_t index_a() const { return index_a_; }
  std::size_t index_b() const { return index_b_; }

  std::vector<std::size_t> interior_dofs() const;
  std::vector<std::size_t> exterior_dofs() const;

  /// Hat function of node i at x (with the constant tails described above).
  double hat(std::size_t i, double x) const;

  /// Piecewise-linear interpolant of nodal `values` at x.
  double interpolate(const std::vector<double>& values, double x) const;

 private:
  Interval omega_;
  double collar_;
  std::vector<double> nodes_;
  std::size_t index_a_ = 0;
  std::size_t index_b_ = 0;
};

/// Uniform interior partition with `n_interior` elements and `n_collar`
/// elements on each side. `boundary_graded` grows collar widths by 1.2 away
/// from the boundary.
DomainMesh build_mesh(double a, double b, double collar, int n_interior,
                      int n_collar, Grading grading = Grading::uniform);

std::string to_string(DofClass c);
std::string to_string(Grading g);
Grading parse_grading(const std::string& text);

}  // namespace superlap
