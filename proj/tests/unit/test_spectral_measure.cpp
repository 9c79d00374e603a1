#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "superlap/errors.hpp"
#include "superlap/spectral_measure.hpp"

using namespace superlap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("atoms are sorted and summed", "[spectral_measure]") {
  const std::vector<Atom> raw{{0.75, 0.5}, {0.25, 1.0}};
  const SpectralMeasure m = SpectralMeasure::from_atoms(raw);
  REQUIRE(m.size() == 2);
  CHECK(m.atoms()[0] == Atom{0.25, 1.0});
  CHECK(m.atoms()[1] == Atom{0.75, 0.5});
  CHECK(m.total_mass() == 1.5);
  CHECK(s_sharp(m) == 0.75);
}

TEST_CASE("canonical form is idempotent", "[spectral_measure]") {
  const std::vector<Atom> raw{{0.6, 2.0}, {0.1, 0.3}, {0.6 + 1e-14, 1.0}, {0.4, 0.0}};
  const SpectralMeasure m = SpectralMeasure::from_atoms(raw);
  const std::vector<Atom> again(m.atoms().begin(), m.atoms().end());
  CHECK(SpectralMeasure::from_atoms(again) == m);
  REQUIRE(m.size() == 2);
  CHECK(m.atoms()[1].weight == 3.0);
}

TEST_CASE("invalid atoms are rejected", "[spectral_measure]") {
  CHECK_THROWS_AS(SpectralMeasure::from_atoms(std::vector<Atom>{{0.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(SpectralMeasure::from_atoms(std::vector<Atom>{{1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(SpectralMeasure::from_atoms(std::vector<Atom>{{0.5, -1.0}}), DomainError);
  CHECK_THROWS_AS(SpectralMeasure::from_atoms(std::vector<Atom>{}), DomainError);
  CHECK(SpectralMeasure::from_atoms(std::vector<Atom>{}, true).empty());
  CHECK_THROWS_AS(s_sharp(SpectralMeasure{}), DomainError);
}

TEST_CASE("densities reduce to interior atoms", "[spectral_measure]") {
  const SpectralMeasure uniform = SpectralMeasure::from_density([](double) { return 1.0; }, 16);
  CHECK(uniform.origin() == MeasureOrigin::quadratured_density);
  CHECK_THAT(uniform.total_mass(), WithinAbs(1.0, 1e-13));
  for (const Atom& a : uniform.atoms()) CHECK((a.s > 0.0 && a.s < 1.0));

  // int_0^1 s^2 ds and int_0^1 s (1 - s) ds
  CHECK_THAT(MeasureSpec::parse("density: powlaw:2, nodes:16").build().total_mass(),
             WithinRel(1.0 / 3.0, 1e-12));
  CHECK_THAT(MeasureSpec::parse("density: bump, nodes:8").build().total_mass(),
             WithinRel(1.0 / 6.0, 1e-12));
  // s^{-1/2} is singular at 0; the smoothstep change of variables tames it.
  CHECK_THAT(MeasureSpec::parse("density: powlaw:-0.5, nodes:32").build().total_mass(),
             WithinRel(2.0, 1e-3));
}

TEST_CASE("series truncations and arithmetic", "[spectral_measure]") {
  const SpectralMeasure series = SpectralMeasure::from_series(
      [](int k) { return Atom{1.0 - std::pow(2.0, -(k + 1)), std::pow(2.0, -k)}; }, 10);
  CHECK(series.origin() == MeasureOrigin::truncated_series);
  CHECK_THAT(series.total_mass(), WithinRel(2.0 - std::pow(2.0, -9), 1e-15));

  const SpectralMeasure a = SpectralMeasure::from_atoms(std::vector<Atom>{{0.25, 1.0}});
  const SpectralMeasure b = SpectralMeasure::from_atoms(std::vector<Atom>{{0.25, 0.5}, {0.5, 1.0}});
  const SpectralMeasure sum = a + b.scaled(2.0);
  REQUIRE(sum.size() == 2);
  CHECK(sum.atoms()[0].weight == 2.0);
  CHECK(sum.atoms()[1].weight == 2.0);
}

TEST_CASE("measure literals round-trip", "[spectral_measure]") {
  const MeasureSpec spec = MeasureSpec::parse("atoms: 0.5:1.0, 0.25:2.0");
  CHECK(spec.build().total_mass() == 3.0);
  CHECK(MeasureSpec::parse(spec.to_string()) == spec);
  const MeasureSpec density = MeasureSpec::parse("density: powlaw:1.5, nodes:12");
  CHECK(MeasureSpec::parse(density.to_string()) == density);
  CHECK_THROWS_AS(MeasureSpec::parse("atoms: 0.5"), ConfigError);
  CHECK_THROWS_AS(MeasureSpec::parse("density: wiggly"), ConfigError);
  CHECK_THROWS_AS(MeasureSpec::parse("cloud: 1"), ConfigError);
}
