#include "sgflow/commands.hpp"
#include "sgflow/config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"Sphere-constrained gradient flow experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  for (const char* name : {"flow", "ground-state", "asymptotics", "properties"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "INI experiment file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "override every seed in the config");
    sub->add_flag("--quiet", quiet, "no progress output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sgflow::kExitUsage;
  }

  sgflow::ExperimentConfig config;
  try {
    config = sgflow::load_config(config_path);
  } catch (const sgflow::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sgflow::kExitUsage;
  }
  config.command = app.get_subcommands().front()->get_name();
  config.out_dir = out_dir;
  config.quiet = quiet;
  if (seed) sgflow::override_seed(config, *seed);

  std::ostringstream sink;
  std::ostream& log = quiet ? static_cast<std::ostream&>(sink) : std::cout;
  return sgflow::run_command(config, log, std::cerr);
}
