#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "superlap/assembly.hpp"
#include "superlap/function_preset.hpp"
#include "superlap/heat.hpp"
#include "superlap/mesh.hpp"
#include "superlap/perimeter.hpp"
#include "superlap/spectral_measure.hpp"

namespace superlap {

/// Sectioned key = value run configuration:
///
///   [domain]     a, b                      (required)
///   [collar]     R (default 10 (b - a)), n_collar (16)
///   [mesh]       n_interior (32), grading (uniform | boundary-graded)
///   [operator]   alpha (0), measure (measure literal)
///   [data]       f, g (function presets, default zero), h (h_a, h_b)
///   [eigs]       k (5)
///   [heat]       dt (0.01), T_end (1), scheme (implicit-euler | crank-nicolson),
///                u0 (function preset, default cos:1:1)
///   [extend]     points (comma-separated exterior points, default b + L, b + 2L,
///                a - L with L = b - a), u0 (default poly:0:1)
///   [perimeter]  method (analytic | quadrature | neumann-identity)
///   [output]     dir (out), formats (csv, json, gnuplot)
struct RunConfig {
  double a = 0.0;
  double b = 1.0;
  double collar = 10.0;
  int n_collar = 16;
  int n_interior = 32;
  Grading grading = Grading::uniform;
  double alpha = 0.0;
  MeasureSpec measure;
  bool has_measure = false;
  FunctionPreset f;
  FunctionPreset g;
  double h_a = 0.0;
  double h_b = 0.0;
  int eigs_k = 5;
  double heat_dt = 0.01;
  double heat_t_end = 1.0;
  TimeScheme heat_scheme = TimeScheme::implicit_euler;
  FunctionPreset heat_u0 = FunctionPreset::parse("cos:1:1");
  std::vector<double> extend_points{2.0, 3.0, -1.0};
  FunctionPreset extend_u0 = FunctionPreset::parse("poly:0:1");
  PerimeterMethod perimeter_method = PerimeterMethod::analytic;
  std::string output_dir = "out";
  std::vector<std::string> formats{"csv", "json", "gnuplot"};

  SpectralMeasure spectral_measure() const;
  DomainMesh build_mesh() const;
  LoadData load_data() const;
  bool wants(const std::string& format) const;
};

/// Parses and validates; throws ConfigError with a line number for syntax
/// errors and the violated condition for semantic ones.
RunConfig parse_config(std::string_view text);

/// Canonical text with all defaults written out; parse_config(emit_config(c))
/// reproduces c.
std::string emit_config(const RunConfig& config);

}  // namespace superlap
