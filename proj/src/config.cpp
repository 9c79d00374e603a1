#include "superlap/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "superlap/errors.hpp"
#include "text_util.hpp"

namespace superlap {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Sections = std::map<std::string, std::map<std::string, Entry>>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"domain", {"a", "b"}},
      {"collar", {"R", "n_collar"}},
      {"mesh", {"n_interior", "grading"}},
      {"operator", {"alpha", "measure"}},
      {"data", {"f", "g", "h"}},
      {"eigs", {"k"}},
      {"heat", {"dt", "T_end", "scheme", "u0"}},
      {"extend", {"points", "u0"}},
      {"perimeter", {"method"}},
      {"output", {"dir", "formats"}},
  };
  return keys;
}

ConfigError at_line(int line, const std::string& message) {
  return ConfigError("line " + std::to_string(line) + ": " + message);
}

Sections read_sections(std::string_view text) {
  Sections sections;
  std::string current;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    const std::string_view line = detail::trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw at_line(line_no, "unterminated section header");
      current = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (!known_keys().count(current)) throw at_line(line_no, "unknown section [" + current + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw at_line(line_no, "expected 'key = value'");
    if (current.empty()) throw at_line(line_no, "key outside of any section");
    const std::string key(detail::trim(line.substr(0, eq)));
    if (!known_keys().at(current).count(key))
      throw at_line(line_no, "unknown key '" + key + "' in [" + current + "]");
    auto& slot = sections[current];
    if (slot.count(key)) throw at_line(line_no, "duplicate key '" + key + "' in [" + current + "]");
    slot[key] = Entry{std::string(detail::trim(line.substr(eq + 1))), line_no};
  }
  return sections;
}

const Entry* lookup(const Sections& sections, const std::string& section, const std::string& key) {
  const auto s = sections.find(section);
  if (s == sections.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

// Runs `convert` on the entry's value, prefixing errors with its line number.
template <class T, class Convert>
void read(const Sections& sections, const std::string& section, const std::string& key, T& out,
          Convert convert) {
  const Entry* entry = lookup(sections, section, key);
  if (!entry) return;
  try {
    out = convert(entry->value);
  } catch (const ConfigError& e) {
    throw at_line(entry->line, "[" + section + "] " + key + ": " + e.what());
  }
}

double finite_number(const std::string& text) {
  const double value = detail::parse_double(text);
  if (!std::isfinite(value)) throw ConfigError("value must be finite");
  return value;
}

std::vector<double> number_list(const std::string& text) {
  std::vector<double> values;
  for (std::string_view item : detail::split(text, ',')) values.push_back(finite_number(std::string(item)));
  return values;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ", ") + item;
  return out;
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& what) { throw ConfigError("invalid config: " + what); };
  if (!(c.a < c.b)) fail("domain requires a < b");
  if (!(c.collar >= c.b - c.a)) fail("collar R >= b - a");
  if (c.n_collar < 4) fail("n_collar >= 4");
  if (c.n_interior < 4) fail("n_interior >= 4");
  if (!(c.alpha >= 0.0)) fail("alpha >= 0");
  const SpectralMeasure mu = c.spectral_measure();
  if (mu.empty() && !(c.alpha > 0.0)) fail("measure nonempty or alpha > 0");
  if (c.eigs_k < 1 || c.eigs_k > c.n_interior + 1) fail("1 <= eigs.k <= n_interior + 1");
  if (!(c.heat_dt > 0.0)) fail("heat.dt > 0");
  if (!(c.heat_t_end >= c.heat_dt)) fail("heat.T_end >= heat.dt");
  for (double x : c.extend_points)
    if (x >= c.a && x <= c.b) fail("extend.points must lie outside [a, b]");
  for (const auto& f : c.formats)
    if (f != "csv" && f != "json" && f != "gnuplot") fail("output.formats entries in {csv, json, gnuplot}");
  if (c.output_dir.empty()) fail("output.dir nonempty");
}

}  // namespace

SpectralMeasure RunConfig::spectral_measure() const {
  if (!has_measure) return SpectralMeasure{};
  try {
    return measure.build(alpha > 0.0);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid measure: ") + e.what());
  }
}

DomainMesh RunConfig::build_mesh() const {
  return superlap::build_mesh(a, b, collar, n_interior, n_collar, grading);
}

LoadData RunConfig::load_data() const { return LoadData{f, g, h_a, h_b}; }

bool RunConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

RunConfig parse_config(std::string_view text) {
  const Sections sections = read_sections(text);
  RunConfig c;
  if (!lookup(sections, "domain", "a") || !lookup(sections, "domain", "b"))
    throw ConfigError("invalid config: [domain] needs both a and b");
  read(sections, "domain", "a", c.a, finite_number);
  read(sections, "domain", "b", c.b, finite_number);
  c.collar = 10.0 * (c.b - c.a);
  c.extend_points = {c.b + (c.b - c.a), c.b + 2.0 * (c.b - c.a), c.a - (c.b - c.a)};
  read(sections, "collar", "R", c.collar, finite_number);
  read(sections, "collar", "n_collar", c.n_collar, [](const std::string& t) { return detail::parse_int(t); });
  read(sections, "mesh", "n_interior", c.n_interior, [](const std::string& t) { return detail::parse_int(t); });
  read(sections, "mesh", "grading", c.grading, parse_grading);
  read(sections, "operator", "alpha", c.alpha, finite_number);
  if (lookup(sections, "operator", "measure")) {
    c.has_measure = true;
    read(sections, "operator", "measure", c.measure, [](const std::string& t) { return MeasureSpec::parse(t); });
  }
  read(sections, "data", "f", c.f, [](const std::string& t) { return FunctionPreset::parse(t); });
  read(sections, "data", "g", c.g, [](const std::string& t) { return FunctionPreset::parse(t); });
  std::vector<double> h{c.h_a, c.h_b};
  read(sections, "data", "h", h, [](const std::string& t) {
    auto v = number_list(t);
    if (v.size() != 2) throw ConfigError("expected two values h_a, h_b");
    return v;
  });
  c.h_a = h[0];
  c.h_b = h[1];
  read(sections, "eigs", "k", c.eigs_k, [](const std::string& t) { return detail::parse_int(t); });
  read(sections, "heat", "dt", c.heat_dt, finite_number);
  read(sections, "heat", "T_end", c.heat_t_end, finite_number);
  read(sections, "heat", "scheme", c.heat_scheme, parse_time_scheme);
  read(sections, "heat", "u0", c.heat_u0, [](const std::string& t) { return FunctionPreset::parse(t); });
  read(sections, "extend", "points", c.extend_points, number_list);
  read(sections, "extend", "u0", c.extend_u0, [](const std::string& t) { return FunctionPreset::parse(t); });
  read(sections, "perimeter", "method", c.perimeter_method, parse_perimeter_method);
  read(sections, "output", "dir", c.output_dir, [](const std::string& t) { return t; });
  read(sections, "output", "formats", c.formats, [](const std::string& t) {
    std::vector<std::string> items;
    for (std::string_view item : detail::split(t, ',')) items.emplace_back(item);
    return items;
  });
  validate(c);
  return c;
}

std::string emit_config(const RunConfig& c) {
  using detail::format_double;
  std::ostringstream out;
  out << "[domain]\na = " << format_double(c.a) << "\nb = " << format_double(c.b) << "\n\n";
  out << "[collar]\nR = " << format_double(c.collar) << "\nn_collar = " << c.n_collar << "\n\n";
  out << "[mesh]\nn_interior = " << c.n_interior << "\ngrading = " << to_string(c.grading) << "\n\n";
  out << "[operator]\nalpha = " << format_double(c.alpha) << "\n";
  if (c.has_measure) out << "measure = " << c.measure.to_string() << "\n";
  out << "\n[data]\nf = " << c.f.to_string() << "\ng = " << c.g.to_string()
      << "\nh = " << format_double(c.h_a) << ", " << format_double(c.h_b) << "\n\n";
  out << "[eigs]\nk = " << c.eigs_k << "\n\n";
  out << "[heat]\ndt = " << format_double(c.heat_dt) << "\nT_end = " << format_double(c.heat_t_end)
      << "\nscheme = " << to_string(c.heat_scheme) << "\nu0 = " << c.heat_u0.to_string() << "\n\n";
  std::vector<std::string> points;
  for (double x : c.extend_points) points.push_back(format_double(x));
  out << "[extend]\npoints = " << join(points) << "\nu0 = " << c.extend_u0.to_string() << "\n\n";
  out << "[perimeter]\nmethod = " << to_string(c.perimeter_method) << "\n\n";
  out << "[output]\ndir = " << c.output_dir << "\nformats = " << join(c.formats) << "\n";
  return out.str();
}

}  // namespace superlap
