#include "superlap/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "superlap/errors.hpp"

namespace superlap {

DomainMesh::DomainMesh(double a, double b, double collar, std::vector<double> nodes)
    : omega_{a, b}, collar_(collar), nodes_(std::move(nodes)) {
  if (nodes_.size() < 3) throw DomainError("mesh needs at least three nodes");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1])) throw DomainError("mesh nodes must increase strictly");
  const auto ia = std::find(nodes_.begin(), nodes_.end(), a);
  const auto ib = std::find(nodes_.begin(), nodes_.end(), b);
  if (ia == nodes_.end() || ib == nodes_.end())
    throw DomainError("mesh must contain a and b as nodes");
  index_a_ = static_cast<std::size_t>(ia - nodes_.begin());
  index_b_ = static_cast<std::size_t>(ib - nodes_.begin());
  if (index_a_ == 0 || index_b_ + 1 == nodes_.size())
    throw DomainError("mesh needs exterior nodes on both sides of Omega");
}

DofClass DomainMesh::dof_class(std::size_t i) const {
  if (i == index_a_) return DofClass::boundary_a;
  if (i == index_b_) return DofClass::boundary_b;
  return is_exterior(i) ? DofClass::exterior : DofClass::interior;
}

std::vector<std::size_t> DomainMesh::interior_dofs() const {
  std::vector<std::size_t> dofs;
  for (std::size_t i = index_a_; i <= index_b_; ++i) dofs.push_back(i);
  return dofs;
}

std::vector<std::size_t> DomainMesh::exterior_dofs() const {
  std::vector<std::size_t> dofs;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (is_exterior(i)) dofs.push_back(i);
  return dofs;
}

double DomainMesh::hat(std::size_t i, double x) const {
  const std::size_t last = nodes_.size() - 1;
  if (x <= nodes_.front()) return i == 0 ? 1.0 : 0.0;
  if (x >= nodes_.back()) return i == last ? 1.0 : 0.0;
  if (i > 0 && x >= nodes_[i - 1] && x <= nodes_[i])
    return (x - nodes_[i - 1]) / (nodes_[i] - nodes_[i - 1]);
  if (i < last && x >= nodes_[i] && x <= nodes_[i + 1])
    return (nodes_[i + 1] - x) / (nodes_[i + 1] - nodes_[i]);
  return 0.0;
}

double DomainMesh::interpolate(const std::vector<double>& values, double x) const {
  if (values.size() != nodes_.size()) throw DomainError("interpolate: size mismatch");
  if (x <= nodes_.front()) return values.front();
  if (x >= nodes_.back()) return values.back();
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const std::size_t right = static_cast<std::size_t>(it - nodes_.begin());
  const std::size_t left = right - 1;
  const double t = (x - nodes_[left]) / (nodes_[right] - nodes_[left]);
  return (1.0 - t) * values[left] + t * values[right];
}

DomainMesh build_mesh(double a, double b, double collar, int n_interior, int n_collar,
                      Grading grading) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(collar))
    throw DomainError("build_mesh: non-finite input");
  if (!(b > a)) throw DomainError("build_mesh: need a < b");
  if (collar < b - a) throw DomainError("build_mesh: collar R must be at least b - a");
  if (n_interior < 4 || n_collar < 4)
    throw DomainError("build_mesh: need at least 4 interior and 4 collar elements per side");

  // Collar offsets from the boundary, increasing, ending exactly at R.
  std::vector<double> offsets(n_collar + 1, 0.0);
  if (grading == Grading::uniform) {
    for (int k = 0; k <= n_collar; ++k) offsets[k] = collar * k / n_collar;
  } else {
    constexpr double ratio = 1.2;
    const double first = collar * (ratio - 1.0) / (std::pow(ratio, n_collar) - 1.0);
    double width = first;
    for (int k = 1; k <= n_collar; ++k) {
      offsets[k] = offsets[k - 1] + width;
      width *= ratio;
    }
  }
  offsets[n_collar] = collar;

  const double length = b - a;
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(n_interior + 2 * n_collar + 1));
  for (int k = n_collar; k >= 1; --k) nodes.push_back(a - offsets[k]);
  for (int k = 0; k < n_interior; ++k) nodes.push_back(a + length * k / n_interior);
  nodes.push_back(b);
  for (int k = 1; k <= n_collar; ++k) nodes.push_back(b + offsets[k]);
  return DomainMesh(a, b, collar, std::move(nodes));
}

std::string to_string(DofClass c) {
  switch (c) {
    case DofClass::interior:
      return "interior";
    case DofClass::boundary_a:
      return "boundary_a";
    case DofClass::boundary_b:
      return "boundary_b";
    case DofClass::exterior:
      return "exterior";
  }
  return "unknown";
}

std::string to_string(Grading g) {
  return g == Grading::uniform ? "uniform" : "boundary-graded";
}

Grading parse_grading(const std::string& text) {
  if (text == "uniform") return Grading::uniform;
  if (text == "boundary-graded") return Grading::boundary_graded;
  throw ConfigError("unknown grading '" + text + "' (expected uniform|boundary-graded)");
}

}  // namespace superlap
