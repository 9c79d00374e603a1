#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "superlap/errors.hpp"
#include "superlap/perimeter.hpp"

using namespace superlap;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

TEST_CASE("interval perimeter closed form", "[perimeter]") {
  CHECK_THAT(per_s_interval(0.0, 1.0, 0.25), WithinRel(std::sqrt(2.0 / std::numbers::pi), 1e-14));
  CHECK_THAT(per_s_interval(0.0, 1.0, 0.1), WithinRel(0.564462392946597584, 1e-13));
  // Scaling: Per_s(lambda Omega) = lambda^{1-2s} Per_s(Omega).
  CHECK_THAT(per_s_interval(-2.0, 2.0, 0.3), WithinRel(std::pow(4.0, 0.4) * per_s_interval(0.0, 1.0, 0.3), 1e-14));
  CHECK_THROWS_AS(per_s_interval(0.0, 1.0, 0.5), FinitenessError);
}

TEST_CASE("methods agree on superposed perimeters", "[perimeter]") {
  const SpectralMeasure mu = SpectralMeasure::from_atoms(std::vector<Atom>{{0.05, 0.5}, {0.25, 1.0}, {0.45, 2.0}});
  const double exact = superposed_perimeter(0.0, 3.0, mu, PerimeterMethod::analytic).superposed;
  for (PerimeterMethod m : {PerimeterMethod::quadrature, PerimeterMethod::neumann_identity}) {
    const PerimeterReport r = superposed_perimeter(0.0, 3.0, mu, m);
    CHECK(r.method == m);
    CHECK(r.per_atom.size() == 3);
    CHECK_THAT(r.superposed, WithinRel(exact, 1e-8));
  }
}

TEST_CASE("offending atoms are named", "[perimeter]") {
  const SpectralMeasure mu = SpectralMeasure::from_atoms(std::vector<Atom>{{0.2, 1.0}, {0.6, 1.0}});
  try {
    superposed_perimeter(0.0, 1.0, mu, PerimeterMethod::quadrature);
    FAIL("expected FinitenessError");
  } catch (const FinitenessError& e) {
    CHECK_THAT(std::string(e.what()), ContainsSubstring("0.6"));
  }
  CHECK(parse_perimeter_method(to_string(PerimeterMethod::neumann_identity)) == PerimeterMethod::neumann_identity);
}
