#include "superlap/spectral_measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "superlap/errors.hpp"
#include "superlap/quadrature.hpp"
#include "text_util.hpp"

namespace superlap {

SpectralMeasure SpectralMeasure::from_atoms(std::span<const Atom> pairs,
                                            bool allow_empty,
                                            MeasureOrigin origin) {
  std::vector<Atom> atoms;
  atoms.reserve(pairs.size());
  for (const Atom& atom : pairs) {
    if (!std::isfinite(atom.s) || atom.s <= 0.0 || atom.s >= 1.0)
      throw DomainError("spectral measure: atom location s = " +
                        detail::format_double(atom.s) + " is not in (0,1)");
    if (!std::isfinite(atom.weight) || atom.weight < 0.0)
      throw DomainError("spectral measure: negative or non-finite weight " +
                        detail::format_double(atom.weight));
    if (atom.weight > 0.0) atoms.push_back(atom);
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& l, const Atom& r) { return l.s < r.s; });

  std::vector<Atom> merged;
  for (const Atom& atom : atoms) {
    if (!merged.empty() && atom.s - merged.back().s < kMergeDistance)
      merged.back().weight += atom.weight;
    else
      merged.push_back(atom);
  }
  if (merged.empty() && !allow_empty)
    throw DomainError(
        "spectral measure is empty; the zero measure is only allowed when "
        "alpha > 0");

  SpectralMeasure measure;
  measure.atoms_ = std::move(merged);
  measure.origin_ = origin;
  return measure;
}

SpectralMeasure SpectralMeasure::from_series(const std::function<Atom(int)>& term,
                                             int terms) {
  std::vector<Atom> atoms;
  for (int k = 0; k < terms; ++k) atoms.push_back(term(k));
  return from_atoms(atoms, false, MeasureOrigin::truncated_series);
}

SpectralMeasure SpectralMeasure::from_density(const std::function<double(double)>& f,
                                              int n_nodes) {
  if (n_nodes < 2) throw DomainError("from_density: n_nodes must be >= 2");
  const quad::Rule& rule = quad::gauss_legendre(n_nodes);
  std::vector<Atom> atoms;
  atoms.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = 0.5 * (rule.nodes[i] + 1.0);
    const double s = t * t * (3.0 - 2.0 * t);
    const double jacobian = 6.0 * t * (1.0 - t);
    const double value = f(s);
    if (!std::isfinite(value) || value < 0.0)
      throw DomainError("from_density: density is negative or non-finite at s = " +
                        detail::format_double(s));
    atoms.push_back({s, 0.5 * rule.weights[i] * jacobian * value});
  }
  return from_atoms(atoms, false, MeasureOrigin::quadratured_density);
}

double SpectralMeasure::total_mass() const {
  return std::accumulate(atoms_.begin(), atoms_.end(), 0.0,
                         [](double acc, const Atom& a) { return acc + a.weight; });
}

SpectralMeasure SpectralMeasure::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("scaled: factor must be positive");
  SpectralMeasure result = *this;
  for (Atom& atom : result.atoms_) atom.weight *= factor;
  return result;
}

SpectralMeasure operator+(const SpectralMeasure& lhs, const SpectralMeasure& rhs) {
  std::vector<Atom> atoms(lhs.atoms_.begin(), lhs.atoms_.end());
  atoms.insert(atoms.end(), rhs.atoms_.begin(), rhs.atoms_.end());
  const MeasureOrigin origin =
      lhs.origin_ == rhs.origin_ ? lhs.origin_ : MeasureOrigin::explicit_atoms;
  return SpectralMeasure::from_atoms(atoms, true, origin);
}

double s_sharp(const SpectralMeasure& measure) {
  if (measure.empty()) throw DomainError("s_sharp: measure is empty");
  return measure.atoms().back().s;
}

// ---------------------------------------------------------------------------

namespace {

double density_value(MeasureSpec::Preset preset, double exponent, double s) {
  switch (preset) {
    case MeasureSpec::Preset::uniform:
      return 1.0;
    case MeasureSpec::Preset::powlaw:
      return std::pow(s, exponent);
    case MeasureSpec::Preset::bump:
      return s * (1.0 - s);
  }
  return 0.0;
}

}  // namespace

MeasureSpec MeasureSpec::parse(std::string_view literal) {
  using detail::parse_double;
  using detail::split;
  using detail::trim;

  const auto colon = literal.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("measure literal must start with 'atoms:' or 'density:'");
  const std::string_view head = trim(literal.substr(0, colon));
  const std::string_view body = trim(literal.substr(colon + 1));

  MeasureSpec spec;
  if (head == "atoms") {
    spec.kind = Kind::atoms;
    if (body.empty()) return spec;
    for (std::string_view item : split(body, ',')) {
      const auto parts = split(item, ':');
      if (parts.size() != 2)
        throw ConfigError("atom '" + std::string(trim(item)) + "' is not of the form s:w");
      spec.atoms.push_back({parse_double(parts[0]), parse_double(parts[1])});
    }
    return spec;
  }
  if (head == "density") {
    spec.kind = Kind::density;
    const auto items = split(body, ',');
    if (items.empty()) throw ConfigError("density literal needs a preset");
    const auto preset = split(items[0], ':');
    const std::string_view name = preset.empty() ? std::string_view{} : preset[0];
    if (name == "uniform" && preset.size() == 1) {
      spec.preset = Preset::uniform;
    } else if (name == "bump" && preset.size() == 1) {
      spec.preset = Preset::bump;
    } else if (name == "powlaw" && preset.size() == 2) {
      spec.preset = Preset::powlaw;
      spec.exponent = parse_double(preset[1]);
      if (!(spec.exponent > -1.0))
        throw ConfigError("powlaw exponent must be > -1 for a finite measure");
    } else {
      throw ConfigError("unknown density preset '" + std::string(trim(items[0])) + "'");
    }
    for (std::size_t i = 1; i < items.size(); ++i) {
      const auto kv = split(items[i], ':');
      if (kv.size() != 2 || kv[0] != "nodes")
        throw ConfigError("unexpected density option '" + std::string(trim(items[i])) + "'");
      spec.nodes = detail::parse_int(kv[1]);
    }
    return spec;
  }
  throw ConfigError("unknown measure kind '" + std::string(head) + "'");
}

std::string MeasureSpec::to_string() const {
  using detail::format_double;
  std::ostringstream out;
  if (kind == Kind::atoms) {
    out << "atoms:";
    for (std::size_t i = 0; i < atoms.size(); ++i)
      out << (i == 0 ? " " : ", ") << format_double(atoms[i].s) << ':'
          << format_double(atoms[i].weight);
    return out.str();
  }
  out << "density: ";
  switch (preset) {
    case Preset::uniform:
      out << "uniform";
      break;
    case Preset::bump:
      out << "bump";
      break;
    case Preset::powlaw:
      out << "powlaw:" << format_double(exponent);
      break;
  }
  out << ", nodes:" << nodes;
  return out.str();
}

SpectralMeasure MeasureSpec::build(bool allow_empty) const {
  if (kind == Kind::atoms) return SpectralMeasure::from_atoms(atoms, allow_empty);
  const Preset p = preset;
  const double e = exponent;
  return SpectralMeasure::from_density(
      [p, e](double s) { return density_value(p, e, s); }, nodes);
}

}  // namespace superlap
