#include "superlap/perimeter.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "superlap/errors.hpp"
#include "superlap/kernel.hpp"
#include "superlap/quadrature.hpp"

namespace superlap {

namespace {

constexpr int kNearPanels = 60;
constexpr double kInitialTruncation = 1e4;
constexpr double kMaxTruncation = 1e30;
constexpr double kTailFraction = 0.01;

double gauss_panel(const std::function<double(double)>& f, double lo, double hi) {
  return quad::integrate(f, lo, hi, quad::gauss_legendre(16));
}

// int_0^inf f(t) dt over one side, where t is the distance to the boundary,
// f(t) ~ C t^{-2s} as t -> 0, and `tail(X)` is the exact integral over [X, inf).
double exterior_side(const std::function<double(double)>& f, double s, double length,
                     const std::function<double(double)>& tail) {
  double near = 0.0;
  double hi = length;
  for (int k = 0; k < kNearPanels; ++k) {
    near += gauss_panel(f, 0.5 * hi, hi);
    hi *= 0.5;
  }
  near += f(hi) * hi / (1.0 - 2.0 * s);

  double far = 0.0;
  double lo = length;
  auto advance = [&](double target) {
    while (lo < target) {
      const double next = std::min(2.0 * lo, target);
      far += gauss_panel(f, lo, next);
      lo = next;
    }
  };
  double truncation = kInitialTruncation * length;
  advance(truncation);
  while (tail(truncation) > kTailFraction * (near + far)) {
    if (truncation >= kMaxTruncation * length) {
      std::ostringstream msg;
      msg << "perimeter: exterior tail for s = " << s << " still exceeds 1% at X = "
          << truncation;
      throw TailError(msg.str());
    }
    truncation *= 10.0;
    advance(truncation);
  }
  return near + far + tail(truncation);
}

void check_finite(const SpectralMeasure& measure) {
  std::ostringstream bad;
  for (const Atom& atom : measure.atoms())
    if (atom.s >= 0.5) bad << (bad.tellp() > 0 ? ", " : "") << atom.s;
  if (bad.tellp() > 0)
    throw FinitenessError("Per_s of an interval is infinite for s >= 1/2; offending atoms: " +
                          bad.str());
}

}  // namespace

std::string to_string(PerimeterMethod method) {
  switch (method) {
    case PerimeterMethod::analytic:
      return "analytic";
    case PerimeterMethod::quadrature:
      return "quadrature";
    case PerimeterMethod::neumann_identity:
      return "neumann-identity";
  }
  return "unknown";
}

PerimeterMethod parse_perimeter_method(const std::string& text) {
  if (text == "analytic") return PerimeterMethod::analytic;
  if (text == "quadrature") return PerimeterMethod::quadrature;
  if (text == "neumann-identity") return PerimeterMethod::neumann_identity;
  throw ConfigError("unknown perimeter method '" + text +
                    "' (expected analytic|quadrature|neumann-identity)");
}

double per_s_interval(double a, double b, double s) {
  if (!(b > a)) throw DomainError("per_s_interval: need a < b");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("per_s_interval: s must lie in (0,1)");
  if (s >= 0.5) throw FinitenessError("Per_s of an interval is infinite for s >= 1/2");
  return c_ns(1, s) * std::pow(b - a, 1.0 - 2.0 * s) / (s * (1.0 - 2.0 * s));
}

PerimeterReport superposed_perimeter(double a, double b, const SpectralMeasure& measure,
                                     PerimeterMethod method) {
  if (measure.empty()) throw DomainError("superposed_perimeter: the measure must be nontrivial");
  check_finite(measure);
  const KernelContext ctx(Interval{a, b});
  const double length = b - a;
  const Function one = [](double) { return 1.0; };

  PerimeterReport report;
  report.method = method;
  for (const Atom& atom : measure.atoms()) {
    const double s = atom.s;
    double value = 0.0;
    if (method == PerimeterMethod::analytic) {
      value = per_s_interval(a, b, s);
    } else {
      // int_X^inf w_{s,Omega} = c ((X + L)^{1-2s} - X^{1-2s}) / (2s (1 - 2s)).
      const double c = c_ns(1, s);
      const double q = 1.0 - 2.0 * s;
      auto tail = [&](double x) {
        return c * std::pow(x, q) * std::expm1(q * std::log1p(length / x)) / (2.0 * s * q);
      };
      for (Side side : {Side::left, Side::right}) {
        std::function<double(double)> f;
        if (method == PerimeterMethod::quadrature) {
          f = [&, side](double t) { return w_s_omega(ctx, s, ExteriorPoint{side, t}); };
        } else {
          f = [&, side](double t) {
            return neumann_derivative(ctx, s, one, 2.0, ExteriorPoint{side, t});
          };
        }
        value += exterior_side(f, s, length, tail);
      }
    }
    report.per_atom.push_back({s, value});
    report.superposed += atom.weight * value;
  }
  return report;
}

}  // namespace superlap
