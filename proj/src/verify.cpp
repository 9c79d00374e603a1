#include "superlap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "random_util.hpp"
#include "superlap/elliptic.hpp"
#include "superlap/errors.hpp"
#include "superlap/extension.hpp"
#include "superlap/heat.hpp"
#include "superlap/perimeter.hpp"
#include "superlap/quadrature.hpp"
#include "superlap/spectral.hpp"

namespace superlap {

namespace {

using io::Json;

struct Context {
  const RunConfig& config;
  DomainMesh mesh;
  SpectralMeasure measure;
  AssembledSystem sys;
  std::mt19937_64 rng;
};

Eigen::VectorXd nodal(const DomainMesh& mesh, const std::vector<std::size_t>& dofs,
                      const Function& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(dofs.size()));
  for (std::size_t k = 0; k < dofs.size(); ++k)
    v(static_cast<Eigen::Index>(k)) = f(mesh.nodes()[dofs[k]]);
  return v;
}

bool non_increasing(const std::vector<double>& values, double rel) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[i - 1] + rel * std::abs(values[i - 1]) + 1e-300) return false;
  return true;
}

SuiteResult constants() {
  SuiteResult r{"constants", false, Json::object(), ""};
  const double half = std::abs(c_ns(1, 0.5) - 0.5 / std::numbers::pi);
  const double quarter =
      std::abs(c_ns(1, 0.25) - 1.0 / (4.0 * std::numbers::sqrt2 * std::sqrt(std::numbers::pi)));
  double min_value = INFINITY;
  for (int dim = 1; dim <= 3; ++dim)
    for (int i = 0; i < 100; ++i) min_value = std::min(min_value, c_ns(dim, (i + 0.5) / 100.0));
  r.measured.set("c_1_half_error", half).set("c_1_quarter_error", quarter).set("min_on_grid", min_value);
  r.passed = half <= 1e-12 && quarter <= 1e-12 && min_value > 0.0;
  return r;
}

SuiteResult structure(Context& ctx) {
  SuiteResult r{"structure", false, Json::object(), ""};
  const Eigen::MatrixXd& a = ctx.sys.op;
  const double norm = a.norm();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(a.rows());
  const double symmetry = (a - a.transpose()).norm() / norm;
  const double kernel = (a * ones).norm() / norm;
  double flux = 0.0, psd = INFINITY;
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd u = detail::random_vector(ctx.rng, a.rows());
    flux = std::max(flux, std::abs(ones.dot(a * u)) / (norm * u.norm()));
    psd = std::min(psd, u.dot(a * u) / (norm * u.squaredNorm()));
  }
  r.measured.set("symmetry", symmetry).set("constant_kernel", kernel).set("max_flux", flux).set("min_rayleigh", psd);
  r.passed = symmetry <= 1e-12 && kernel <= 1e-10 && flux <= 1e-10 && psd >= -1e-12;
  return r;
}

SuiteResult solvability(Context& ctx) {
  SuiteResult r{"solvability", false, Json::object(), ""};
  const double length = ctx.mesh.omega().length();
  bool rejected = false;
  double defect = 0.0;
  const LoadData unbalanced{FunctionPreset::constant(1.0), {}, 0.0, 0.0};
  try {
    solve(ctx.sys, assemble_load(ctx.mesh, ctx.sys.alpha, unbalanced).values);
  } catch (const CompatibilityError& e) {
    rejected = true;
    defect = e.defect();
  }
  const LoadData balanced{FunctionPreset::parse("cos:1:1"), {}, 0.0, 0.0};
  const Eigen::VectorXd load = assemble_load(ctx.mesh, ctx.sys.alpha, balanced).values;
  const SolveReport s0 = solve(ctx.sys, load, 0.0);
  const SolveReport s1 = solve(ctx.sys, load, 1.0);
  const double scale = ctx.sys.op.norm() * s0.solution.norm() + load.norm();
  const Eigen::VectorXd shift = s1.solution - s0.solution;
  const double constant_gap = (shift.array() - 1.0).abs().maxCoeff();
  const double mean = std::abs(omega_mean(ctx.mesh, s0.solution));
  r.measured.set("rejected_defect", defect)
      .set("residual_ratio", s0.residual_norm / scale)
      .set("pin_shift_deviation", constant_gap)
      .set("mean_abs", mean);
  r.passed = rejected && std::abs(defect - length) <= 1e-12 * length && s0.residual_norm <= 1e-9 * scale &&
             constant_gap <= 1e-10 && mean <= 1e-10;
  return r;
}

SuiteResult spectrum(Context& ctx) {
  SuiteResult r{"spectrum", false, Json::object(), ""};
  const int k = std::max(2, ctx.config.eigs_k);
  const EigenDecomposition eig = eigenpairs(ctx.sys, k);
  const double l1 = eig.lambdas(0), l2 = eig.lambdas(1);
  const Eigen::VectorXd first = eig.modes.col(0);
  const double variation = (first.maxCoeff() - first.minCoeff()) / first.cwiseAbs().maxCoeff();
  const Eigen::MatrixXd gram = eig.modes.transpose() * interior_mass(ctx.sys) * eig.modes;
  const double ortho = (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
  r.measured.set("lambda_1", l1).set("lambda_2", l2).set("mode_1_variation", variation).set("orthonormality", ortho);
  r.passed = l2 > 0.0 && l1 <= 1e-8 * l2 && l1 >= -1e-10 * l2 && variation < 1e-6 && ortho <= 1e-8;
  return r;
}

SuiteResult extension(Context& ctx, std::uint64_t seed) {
  SuiteResult r{"extension", true, Json::object(), ""};
  if (ctx.measure.empty()) {
    r.note = "skipped: trivial measure has no exterior condition";
    return r;
  }
  const Function u0 = ctx.config.extend_u0.bind(ctx.mesh.omega());
  const MinimalityReport mini =
      minimality_check(ctx.sys, nodal(ctx.mesh, ctx.mesh.interior_dofs(), u0), 100, seed);
  const KernelContext kctx(ctx.mesh.omega());
  std::vector<double> points = ctx.config.extend_points;
  if (points.empty()) points = {ctx.mesh.omega().b + 1.0};
  const ExtensionProbe probe = extend(kctx, ctx.measure, u0, points);
  double lo = INFINITY, hi = -INFINITY;
  const Interval& om = ctx.mesh.omega();
  for (int i = 0; i <= 2000; ++i) {
    const double v = u0(om.a + om.length() * i / 2000.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double slack = 1e-6 * std::max(1.0, hi - lo);
  bool hull = true;
  double residual = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    hull = hull && probe.values[i] >= lo - slack && probe.values[i] <= hi + slack;
    residual = std::max(residual, std::abs(probe.normalized_neumann[i]));
  }
  r.measured.set("violations", mini.violations)
      .set("min_gap", mini.min_gap)
      .set("tolerance", mini.tolerance)
      .set("within_hull", hull)
      .set("max_normalized_neumann", residual);
  r.passed = mini.violations == 0 && hull && residual <= 1e-8 * std::max(1.0, hi - lo);
  return r;
}

SuiteResult asymptotics(Context& ctx) {
  SuiteResult r{"asymptotics", true, Json::object(), ""};
  if (ctx.measure.empty()) {
    r.note = "skipped: trivial measure";
    return r;
  }
  const Interval& om = ctx.mesh.omega();
  const Function u0 = ctx.config.extend_u0.bind(om);
  const double mean = quad::adaptive(u0, om.a, om.b, 1e-14, 1e-13).value / om.length();
  const KernelContext kctx(om);
  std::vector<double> deviations;
  Json far = Json::array();
  for (double factor : {1e2, 1e3, 1e4}) {
    const double value = extension_ratio(kctx, ctx.measure, u0, ExteriorPoint{Side::right, factor * om.length()});
    deviations.push_back(std::abs(value - mean));
    far.push(Json::object().set("distance", factor * om.length()).set("deviation", deviations.back()));
  }
  r.measured.set("mean", mean).set("far_field", far);
  r.passed = non_increasing(deviations, 0.0) && deviations.back() < 1e-3;
  return r;
}

SuiteResult heat(Context& ctx) {
  SuiteResult r{"heat", false, Json::object(), ""};
  const HeatStepper stepper(ctx.sys, ctx.config.heat_dt, ctx.config.heat_scheme);
  const long steps = std::min(1000L, std::lround(ctx.config.heat_t_end / ctx.config.heat_dt));
  const Function u0 = ctx.config.heat_u0.bind(ctx.mesh.omega());
  const Eigen::VectorXd start = nodal(ctx.mesh, ctx.mesh.interior_dofs(), u0);
  const HeatTrace trace = evolve(stepper, start, static_cast<double>(steps) * stepper.dt());
  const double scale = ctx.mesh.omega().length() * std::max(1.0, start.cwiseAbs().maxCoeff());
  double drift = 0.0;
  for (double m : trace.mass) drift = std::max(drift, std::abs(m - trace.mass.front()) / scale);
  const bool energy = non_increasing(trace.energy, 1e-12);
  const bool deviation = non_increasing(trace.deviation, 1e-12);
  r.measured.set("steps", steps)
      .set("mass_drift", drift)
      .set("energy_monotone", energy)
      .set("deviation_monotone", deviation)
      .set("final_deviation", trace.deviation.back());
  r.passed = drift < 1e-10 && energy && deviation;
  return r;
}

SuiteResult continuity(Context& ctx) {
  SuiteResult r{"continuity", true, Json::object(), ""};
  if (ctx.measure.empty()) {
    r.note = "skipped: trivial measure";
    return r;
  }
  const Function u0 = ctx.config.extend_u0.bind(ctx.mesh.omega());
  const ContinuityReport probe = continuity_probe(KernelContext(ctx.mesh.omega()), ctx.measure, u0, 12);
  const std::vector<double> tail(probe.gaps.begin() + 2, probe.gaps.end());
  r.measured.set("gaps", Json(probe.gaps));
  r.measured.set("last_below_1e-2", probe.gaps.back() < 1e-2);
  // The approach rate is about d^{2s} for small s, so the fixed 1e-2 level is
  // informational; the suite asks for monotone decay and a tenfold reduction.
  r.passed = non_increasing(tail, 0.0) && probe.gaps.back() <= 0.1 * probe.gaps.front();
  return r;
}

SuiteResult normalized_identity(Context& ctx) {
  SuiteResult r{"normalized_neumann_identity", true, Json::object(), ""};
  if (ctx.measure.empty()) {
    r.note = "skipped: trivial measure";
    return r;
  }
  const Interval& om = ctx.mesh.omega();
  const Function inside = ctx.config.extend_u0.bind(om);
  const Function u = [&](double x) { return om.contains_closed(x) ? inside(x) : std::cos(x); };
  const KernelContext kctx(om);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double distance = om.length() * std::ldexp(1.0, 3 - i / 2);
    const double x = (i % 2 == 0) ? om.b + distance : om.a - distance;
    const double lhs = normalized_neumann(kctx, ctx.measure, u, x);
    const double rhs = u(x) - extension_ratio(kctx, ctx.measure, inside, x);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(u(x))));
  }
  r.measured.set("max_error", worst);
  r.passed = worst <= 1e-8;
  return r;
}

SuiteResult perimeter(Context& ctx) {
  SuiteResult r{"perimeter", false, Json::object(), ""};
  const Interval& om = ctx.mesh.omega();
  bool finiteness = false;
  try {
    per_s_interval(om.a, om.b, 0.5);
  } catch (const FinitenessError&) {
    finiteness = true;
  }
  r.measured.set("s_half_rejected", finiteness);
  if (ctx.measure.empty()) {
    r.passed = finiteness;
    r.note = "trivial measure: only the s = 1/2 rejection is checked";
    return r;
  }
  const auto atoms = ctx.measure.atoms();
  if (std::any_of(atoms.begin(), atoms.end(), [](const Atom& a) { return a.s >= 0.5; })) {
    bool rejected = false;
    try {
      superposed_perimeter(om.a, om.b, ctx.measure, PerimeterMethod::analytic);
    } catch (const FinitenessError&) {
      rejected = true;
    }
    r.measured.set("infinite_measure_rejected", rejected);
    r.note = "measure has atoms with s >= 1/2: the superposed perimeter is infinite";
    r.passed = finiteness && rejected;
    return r;
  }
  const double analytic = superposed_perimeter(om.a, om.b, ctx.measure, PerimeterMethod::analytic).superposed;
  const double quadrature = superposed_perimeter(om.a, om.b, ctx.measure, PerimeterMethod::quadrature).superposed;
  const double identity = superposed_perimeter(om.a, om.b, ctx.measure, PerimeterMethod::neumann_identity).superposed;
  const double doubled =
      superposed_perimeter(om.a, om.b, ctx.measure.scaled(2.0), PerimeterMethod::analytic).superposed;
  const double agreement = std::max({std::abs(quadrature - analytic), std::abs(identity - analytic),
                                     std::abs(identity - quadrature)}) / analytic;
  const double linearity = std::abs(doubled - 2.0 * analytic) / analytic;
  r.measured.set("analytic", analytic)
      .set("quadrature", quadrature)
      .set("neumann_identity", identity)
      .set("agreement", agreement)
      .set("linearity", linearity);
  r.passed = finiteness && agreement < 1e-6 && linearity <= 1e-15;
  return r;
}

SuiteResult embedding(Context& ctx) {
  SuiteResult r{"embedding", false, Json::object(), ""};
  const std::vector<std::size_t> idx = ctx.mesh.interior_dofs();
  const auto n = static_cast<Eigen::Index>(idx.size());
  auto omega_block = [&](double s) {
    const Eigen::MatrixXd g = fractional_form(ctx.mesh, s, InteractionRegion::omega_squared);
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        out(i, j) = g(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                      static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
    return out;
  };
  const Eigen::MatrixXd mass = interior_mass(ctx.sys);
  const std::vector<std::pair<double, double>> pairs{{0.1, 0.3}, {0.2, 0.5}, {0.25, 0.75}, {0.4, 0.9}, {0.6, 0.7}};
  double worst = 0.0;  // largest lhs / rhs
  for (const auto& [s1, s2] : pairs) {
    const Eigen::MatrixXd g1 = omega_block(s1), g2 = omega_block(s2);
    const double constant = 1.0 + 4.0 / s1;
    for (int t = 0; t < 10; ++t) {
      const Eigen::VectorXd u = detail::random_vector(ctx.rng, n);
      const double l2 = u.dot(mass * u);
      worst = std::max(worst, (l2 + u.dot(g1 * u)) / (constant * (l2 + u.dot(g2 * u))));
    }
  }
  r.measured.set("max_ratio", worst);
  r.passed = worst <= 1.0;
  return r;
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

io::Json VerifyReport::to_json() const {
  Json suites_json = Json::array();
  for (const SuiteResult& s : suites) {
    Json entry = Json::object().set("name", s.name).set("passed", s.passed).set("measured", s.measured);
    if (!s.note.empty()) entry.set("note", s.note);
    suites_json.push(std::move(entry));
  }
  return Json::object().set("seed", static_cast<unsigned long long>(seed)).set("all_passed", all_passed()).set("suites", suites_json);
}

VerifyReport run_verify(const RunConfig& config, std::uint64_t seed) {
  const DomainMesh mesh = config.build_mesh();
  const SpectralMeasure measure = config.spectral_measure();
  Context ctx{config, mesh, measure, assemble(mesh, measure, config.alpha), std::mt19937_64(seed)};
  VerifyReport report;
  report.seed = seed;
  report.suites.push_back(constants());
  report.suites.push_back(structure(ctx));
  report.suites.push_back(solvability(ctx));
  report.suites.push_back(spectrum(ctx));
  report.suites.push_back(extension(ctx, seed));
  report.suites.push_back(asymptotics(ctx));
  report.suites.push_back(heat(ctx));
  report.suites.push_back(continuity(ctx));
  report.suites.push_back(normalized_identity(ctx));
  report.suites.push_back(perimeter(ctx));
  report.suites.push_back(embedding(ctx));
  return report;
}

}  // namespace superlap
