#pragma once

#include <string>
#include <vector>

#include "superlap/spectral_measure.hpp"

namespace superlap {

enum class PerimeterMethod { analytic, quadrature, neumann_identity };

std::string to_string(PerimeterMethod method);
PerimeterMethod parse_perimeter_method(const std::string& text);

struct PerimeterReport {
  std::vector<Atom> per_atom;  ///< (s, Per_s(Omega)), weights not applied
  double superposed = 0.0;     ///< sum_k w_k Per_{s_k}(Omega)
  PerimeterMethod method = PerimeterMethod::analytic;
};

/// Per_s((a, b)) = c_{1,s} (b - a)^{1-2s} / (s (1 - 2s)); FinitenessError for s >= 1/2.
double per_s_interval(double a, double b, double s);

/// Superposed perimeter of (a, b). The quadrature method integrates
/// w_{s,Omega} over the exterior; the Neumann-identity method integrates
/// N_s u for u = 1 on Omega and 2 outside, whose normalized Neumann function
/// is identically 1. Both close the far field with the exact tail beyond a
/// truncation radius starting at 1e4 (b - a).
PerimeterReport superposed_perimeter(double a, double b, const SpectralMeasure& measure,
                                     PerimeterMethod method);

}  // namespace superlap
