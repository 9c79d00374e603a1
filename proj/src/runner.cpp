#include "superlap/runner.hpp"

#include <ostream>

#include "superlap/elliptic.hpp"
#include "superlap/errors.hpp"
#include "superlap/extension.hpp"
#include "superlap/heat.hpp"
#include "superlap/io.hpp"
#include "superlap/perimeter.hpp"
#include "superlap/spectral.hpp"
#include "superlap/verify.hpp"

namespace superlap {

namespace {

namespace fs = std::filesystem;
using io::cell;
using io::CsvTable;
using io::Json;

CsvTable nodal_table(std::vector<std::string> value_columns) {
  std::vector<std::string> header{"node", "x", "class"};
  header.insert(header.end(), value_columns.begin(), value_columns.end());
  return CsvTable{header, {}};
}

std::vector<std::string> node_cells(const DomainMesh& mesh, std::size_t i) {
  return {cell(i), cell(mesh.nodes()[i]), to_string(mesh.dof_class(i))};
}

CsvTable mesh_table(const DomainMesh& mesh) {
  CsvTable table = nodal_table({});
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) table.add_row(node_cells(mesh, i));
  return table;
}

class Artifacts {
 public:
  Artifacts(const RunConfig& config, fs::path dir, std::ostream& log)
      : config_(config), dir_(std::move(dir)), log_(log) {}

  void csv(const std::string& name, const CsvTable& table) {
    if (config_.wants("csv")) write(name, table.str());
  }
  void json(const std::string& name, const Json& value, bool always = false) {
    if (always || config_.wants("json")) write(name, value.dump());
  }
  void plot(const std::string& script) {
    if (config_.wants("gnuplot")) write("plot.gp", script);
  }

 private:
  void write(const std::string& name, const std::string& text) {
    io::write_file(dir_ / name, text);
    log_ << "wrote " << (dir_ / name).string() << '\n';
  }

  const RunConfig& config_;
  fs::path dir_;
  std::ostream& log_;
};

std::string plot_header(const std::string& title) {
  return "set datafile separator ','\nset key autotitle columnhead\nset title '" + title + "'\n";
}

int run_solve(const RunConfig& config, Artifacts& out, std::ostream& log) {
  const DomainMesh mesh = config.build_mesh();
  const AssembledSystem sys = assemble(mesh, config.spectral_measure(), config.alpha);
  const LoadVector load = assemble_load(mesh, config.alpha, config.load_data());
  const SolveReport report = solve(sys, load.values);
  CsvTable table = nodal_table({"value"});
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    auto row = node_cells(mesh, i);
    row.push_back(cell(report.solution(static_cast<Eigen::Index>(i))));
    table.add_row(std::move(row));
  }
  out.csv("solution.csv", table);
  out.csv("mesh.csv", mesh_table(mesh));
  out.json("report.json", Json::object()
                              .set("command", "solve")
                              .set("compatibility_defect", report.compatibility_defect)
                              .set("pin", report.pin)
                              .set("residual_norm", report.residual_norm)
                              .set("omega_mean", omega_mean(mesh, report.solution))
                              .set("energy", energy(sys, report.solution, load.values))
                              .set("g_truncated", load.g_truncated));
  out.plot(plot_header("solution") + "plot 'solution.csv' using 2:4 with linespoints\n");
  log << "solved: residual " << report.residual_norm << ", defect " << report.compatibility_defect << '\n';
  if (load.g_truncated) log << "note: g is only integrated over the truncated collar\n";
  return kExitOk;
}

int run_eigs(const RunConfig& config, Artifacts& out, std::ostream& log) {
  const DomainMesh mesh = config.build_mesh();
  const SpectralMeasure measure = config.spectral_measure();
  const AssembledSystem sys = assemble(mesh, measure, config.alpha);
  const EigenDecomposition eig = eigenpairs(sys, config.eigs_k);
  std::vector<std::string> columns;
  for (int j = 1; j <= config.eigs_k; ++j) columns.push_back("mode_" + std::to_string(j));
  CsvTable table = nodal_table(columns);
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    auto row = node_cells(mesh, i);
    for (int j = 0; j < config.eigs_k; ++j) row.push_back(cell(eig.fields(static_cast<Eigen::Index>(i), j)));
    table.add_row(std::move(row));
  }
  out.csv("modes.csv", table);
  std::vector<double> lambdas(eig.lambdas.data(), eig.lambdas.data() + eig.lambdas.size());
  Json report = Json::object().set("command", "eigs").set("k", config.eigs_k).set("lambdas", Json(lambdas));
  if (!measure.empty()) report.set("poincare_constant", poincare_constant(mesh, measure));
  out.json("eigenvalues.json", report);
  std::string script = plot_header("eigenmodes") + "plot ";
  for (int j = 1; j <= config.eigs_k; ++j)
    script += (j > 1 ? ", " : "") + std::string("'modes.csv' using 2:") + std::to_string(3 + j) + " with lines";
  out.plot(script + "\n");
  log << "lambda_2 = " << (eig.lambdas.size() > 1 ? eig.lambdas(1) : eig.lambdas(0)) << '\n';
  return kExitOk;
}

int run_heat(const RunConfig& config, Artifacts& out, std::ostream& log) {
  const DomainMesh mesh = config.build_mesh();
  const AssembledSystem sys = assemble(mesh, config.spectral_measure(), config.alpha);
  const HeatStepper stepper(sys, config.heat_dt, config.heat_scheme);
  const Function u0 = config.heat_u0.bind(mesh.omega());
  Eigen::VectorXd start(static_cast<Eigen::Index>(stepper.reduced().interior.size()));
  for (std::size_t k = 0; k < stepper.reduced().interior.size(); ++k)
    start(static_cast<Eigen::Index>(k)) = u0(mesh.nodes()[stepper.reduced().interior[k]]);
  const HeatTrace trace = evolve(stepper, start, config.heat_t_end);
  CsvTable table{{"t", "mass", "energy", "deviation"}, {}};
  for (std::size_t n = 0; n < trace.times.size(); ++n)
    table.add_row({cell(trace.times[n]), cell(trace.mass[n]), cell(trace.energy[n]), cell(trace.deviation[n])});
  out.csv("trace.csv", table);
  CsvTable field = nodal_table({"value"});
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    auto row = node_cells(mesh, i);
    row.push_back(cell(trace.final_field(static_cast<Eigen::Index>(i))));
    field.add_row(std::move(row));
  }
  out.csv("final_field.csv", field);
  out.json("heat.json", Json::object()
                            .set("command", "heat")
                            .set("scheme", to_string(config.heat_scheme))
                            .set("steps", static_cast<long>(trace.times.size() - 1))
                            .set("initial_mass", trace.mass.front())
                            .set("final_mass", trace.mass.back())
                            .set("final_energy", trace.energy.back())
                            .set("final_deviation", trace.deviation.back()));
  out.plot(plot_header("heat diagnostics") +
           "set logscale y\nplot 'trace.csv' using 1:3 with lines, 'trace.csv' using 1:4 with lines\n");
  log << "heat: " << trace.times.size() - 1 << " steps, final deviation " << trace.deviation.back() << '\n';
  return kExitOk;
}

int run_extend(const RunConfig& config, Artifacts& out, std::ostream& log) {
  const SpectralMeasure measure = config.spectral_measure();
  const KernelContext ctx(Interval{config.a, config.b});
  const ExtensionProbe probe = extend(ctx, measure, config.extend_u0.bind(ctx.omega()), config.extend_points);
  CsvTable table{{"x", "value", "normalized_neumann"}, {}};
  for (std::size_t i = 0; i < probe.points.size(); ++i)
    table.add_row({cell(probe.points[i]), cell(probe.values[i]), cell(probe.normalized_neumann[i])});
  out.csv("probe.csv", table);
  out.json("extend.json", Json::object()
                              .set("command", "extend")
                              .set("points", Json(probe.points))
                              .set("values", Json(probe.values))
                              .set("normalized_neumann", Json(probe.normalized_neumann))
                              .set("far_limit", probe.far_limit));
  out.plot(plot_header("exterior extension") + "plot 'probe.csv' using 1:2 with points\n");
  log << "far-field value " << probe.far_limit << '\n';
  return kExitOk;
}

int run_perimeter(const RunConfig& config, Artifacts& out, std::ostream& log) {
  const PerimeterReport report =
      superposed_perimeter(config.a, config.b, config.spectral_measure(), config.perimeter_method);
  Json atoms = Json::array();
  CsvTable table{{"s", "per_s"}, {}};
  for (const Atom& atom : report.per_atom) {
    atoms.push(Json::object().set("s", atom.s).set("per_s", atom.weight));
    table.add_row({cell(atom.s), cell(atom.weight)});
  }
  out.csv("perimeter.csv", table);
  out.json("perimeter.json", Json::object()
                                 .set("per_atom", atoms)
                                 .set("superposed", report.superposed)
                                 .set("method", to_string(report.method)));
  out.plot(plot_header("per-atom perimeters") + "plot 'perimeter.csv' using 1:2 with points\n");
  log << "superposed perimeter " << report.superposed << '\n';
  return kExitOk;
}

int run_verify_command(const RunConfig& config, std::uint64_t seed, Artifacts& out, std::ostream& log) {
  const VerifyReport report = run_verify(config, seed);
  out.json("verify.json", report.to_json(), true);
  for (const SuiteResult& s : report.suites)
    log << (s.passed ? "PASS " : "FAIL ") << s.name << (s.note.empty() ? "" : " (" + s.note + ")") << '\n';
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "solve") return Command::solve;
  if (name == "eigs") return Command::eigs;
  if (name == "heat") return Command::heat;
  if (name == "extend") return Command::extend;
  if (name == "perimeter") return Command::perimeter;
  if (name == "verify") return Command::verify;
  throw ConfigError("unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::solve:
      return "solve";
    case Command::eigs:
      return "eigs";
    case Command::heat:
      return "heat";
    case Command::extend:
      return "extend";
    case Command::perimeter:
      return "perimeter";
    case Command::verify:
      return "verify";
  }
  return "unknown";
}

int run(const RunConfig& config, Command command, std::uint64_t seed, const fs::path& out_dir,
        std::ostream& log) {
  Artifacts out(config, out_dir, log);
  switch (command) {
    case Command::solve:
      return run_solve(config, out, log);
    case Command::eigs:
      return run_eigs(config, out, log);
    case Command::heat:
      return run_heat(config, out, log);
    case Command::extend:
      return run_extend(config, out, log);
    case Command::perimeter:
      return run_perimeter(config, out, log);
    case Command::verify:
      return run_verify_command(config, seed, out, log);
  }
  return kExitConfig;
}

int run_cli(const std::string& command, const fs::path& config_path, std::uint64_t seed,
            const std::string& out_override, std::ostream& log, std::ostream& err) {
  try {
    const Command cmd = parse_command(command);
    const RunConfig config = parse_config(io::read_file(config_path));
    const fs::path out_dir = out_override.empty() ? fs::path(config.output_dir) : fs::path(out_override);
    return run(config, cmd, seed, out_dir, log);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FinitenessError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CompatibilityError& e) {
    err << "compatibility error: " << e.what() << '\n';
    return kExitCompatibility;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace superlap
