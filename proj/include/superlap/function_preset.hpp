#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "superlap/kernel.hpp"

namespace superlap {

/// Closed-form data functions used for f (on Omega) and g (on the collar).
///
/// A preset is a sum of terms joined by " + ":
///   zero | const:c | cos:k:amp | poly:c0:c1:... | band:lo:hi:value
/// cos:k:amp is amp * cos(k pi (x - a) / (b - a)); band is `value` on
/// [lo, hi] and 0 elsewhere.
class FunctionPreset {
 public:
  struct Term {
    enum class Kind { constant, cosine, polynomial, band };
    Kind kind = Kind::constant;
    std::vector<double> params;
    bool operator==(const Term&) const = default;
  };

  FunctionPreset() = default;
  static FunctionPreset parse(std::string_view text);
  static FunctionPreset constant(double c);

  bool is_zero() const { return terms_.empty(); }
  std::string to_string() const;
  double operator()(const Interval& omega, double x) const;
  Function bind(const Interval& omega) const;

  bool operator==(const FunctionPreset&) const = default;

 private:
  std::vector<Term> terms_;
};

}  // namespace superlap
