#include "superlap/function_preset.hpp"

#include <cmath>
#include <numbers>

#include "superlap/errors.hpp"
#include "text_util.hpp"

namespace superlap {

namespace {

std::vector<std::string_view> split_terms(std::string_view text) {
  std::vector<std::string_view> terms;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(" + ", start);
    terms.push_back(detail::trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 3;
  }
  return terms;
}

}  // namespace

FunctionPreset FunctionPreset::parse(std::string_view text) {
  using Kind = Term::Kind;
  FunctionPreset preset;
  text = detail::trim(text);
  if (text.empty()) throw ConfigError("empty function preset");
  for (std::string_view item : split_terms(text)) {
    const auto parts = detail::split(item, ':');
    if (parts.empty()) throw ConfigError("empty term in function preset");
    const std::string_view name = parts[0];
    std::vector<double> params;
    for (std::size_t i = 1; i < parts.size(); ++i) params.push_back(detail::parse_double(parts[i]));
    Term term;
    if (name == "zero" && params.empty()) {
      continue;
    } else if (name == "const" && params.size() == 1) {
      term.kind = Kind::constant;
    } else if (name == "cos" && params.size() == 2) {
      term.kind = Kind::cosine;
    } else if (name == "poly" && !params.empty()) {
      term.kind = Kind::polynomial;
    } else if (name == "band" && params.size() == 3) {
      term.kind = Kind::band;
      if (!(params[0] < params[1])) throw ConfigError("band:lo:hi:value needs lo < hi");
    } else {
      throw ConfigError("unknown function preset term '" + std::string(item) + "'");
    }
    term.params = std::move(params);
    preset.terms_.push_back(std::move(term));
  }
  return preset;
}

FunctionPreset FunctionPreset::constant(double c) {
  FunctionPreset preset;
  if (c != 0.0) preset.terms_.push_back({Term::Kind::constant, {c}});
  return preset;
}

std::string FunctionPreset::to_string() const {
  if (terms_.empty()) return "zero";
  std::string out;
  for (const Term& term : terms_) {
    if (!out.empty()) out += " + ";
    switch (term.kind) {
      case Term::Kind::constant:
        out += "const";
        break;
      case Term::Kind::cosine:
        out += "cos";
        break;
      case Term::Kind::polynomial:
        out += "poly";
        break;
      case Term::Kind::band:
        out += "band";
        break;
    }
    for (double p : term.params) out += ":" + detail::format_double(p);
  }
  return out;
}

double FunctionPreset::operator()(const Interval& omega, double x) const {
  double value = 0.0;
  for (const Term& term : terms_) {
    const auto& p = term.params;
    switch (term.kind) {
      case Term::Kind::constant:
        value += p[0];
        break;
      case Term::Kind::cosine:
        value += p[1] * std::cos(p[0] * std::numbers::pi * (x - omega.a) / omega.length());
        break;
      case Term::Kind::polynomial: {
        double acc = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
        value += acc;
        break;
      }
      case Term::Kind::band:
        if (x >= p[0] && x <= p[1]) value += p[2];
        break;
    }
  }
  return value;
}

Function FunctionPreset::bind(const Interval& omega) const {
  return [preset = *this, omega](double x) { return preset(omega, x); };
}

}  // namespace superlap
