#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>

#include "superlap/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Superposed fractional Neumann problems on an interval"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  for (const char* name : {"solve", "eigs", "heat", "extend", "perimeter", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Path to the run configuration")->required();
    sub->add_option("--seed", seed, "Seed for randomized checks");
    sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : superlap::kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return superlap::run_cli(command, config_path, seed, out_dir, std::cout, std::cerr);
}
