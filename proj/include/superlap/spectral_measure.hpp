#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace superlap {

/// One Dirac mass w * delta_s of the spectral measure.
struct Atom {
  double s = 0.0;
  double weight = 0.0;
  bool operator==(const Atom&) const = default;
};

enum class MeasureOrigin { explicit_atoms, truncated_series, quadratured_density };

/// Nonnegative finite measure on (0, 1) stored as a canonical list of atoms:
/// sorted by s, no two atoms closer than `kMergeDistance`, every weight > 0.
///
/// Densities are reduced to atoms at construction, so everything downstream
/// only ever sees weighted fractional orders.
class SpectralMeasure {
 public:
  static constexpr double kMergeDistance = 1e-12;

  SpectralMeasure() = default;

  /// Canonicalizes `pairs`. Zero weights are dropped; equal orders are merged
  /// by summing weights. An empty result is only accepted with `allow_empty`
  /// (the measure is then the zero measure and alpha must carry the operator).
  static SpectralMeasure from_atoms(std::span<const Atom> pairs,
                                    bool allow_empty = false,
                                    MeasureOrigin origin = MeasureOrigin::explicit_atoms);

  /// First `terms` atoms of a series sum_k c_k delta_{s_k}.
  static SpectralMeasure from_series(const std::function<Atom(int)>& term,
                                     int terms);

  /// Reduces f(s) ds to atoms with an n_nodes-point Gauss-Legendre rule
  /// pulled back through s = 3t^2 - 2t^3. The map clusters nodes at both ends
  /// so integrable endpoint singularities such as s^{-1/2} are resolved.
  static SpectralMeasure from_density(const std::function<double(double)>& f,
                                      int n_nodes);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  double total_mass() const;
  MeasureOrigin origin() const { return origin_; }

  /// c * mu.
  SpectralMeasure scaled(double factor) const;

  /// Sum of two measures (disjoint union of atoms, then canonicalized).
  friend SpectralMeasure operator+(const SpectralMeasure& lhs,
                                   const SpectralMeasure& rhs);

  bool operator==(const SpectralMeasure& other) const {
    return atoms_ == other.atoms_;
  }

 private:
  std::vector<Atom> atoms_;
  MeasureOrigin origin_ = MeasureOrigin::explicit_atoms;
};

/// Largest atom location; mu([s_sharp, 1)) > 0 holds with the strongest
/// choice of exponent.
double s_sharp(const SpectralMeasure& measure);

/// Parsed form of a measure literal, kept so configs can be re-emitted.
///   atoms: 0.5:1.0, 0.25:2.0
///   density: uniform, nodes:16
///   density: powlaw:-0.5, nodes:64
///   density: bump, nodes:32
struct MeasureSpec {
  enum class Kind { atoms, density };
  enum class Preset { uniform, powlaw, bump };

  Kind kind = Kind::atoms;
  std::vector<Atom> atoms;
  Preset preset = Preset::uniform;
  double exponent = 0.0;  // powlaw only
  int nodes = 16;

  static MeasureSpec parse(std::string_view literal);
  std::string to_string() const;
  SpectralMeasure build(bool allow_empty = false) const;
  bool operator==(const MeasureSpec&) const = default;
};

}  // namespace superlap
