// Command-line entry point.
//
//   dropwave <command> --config PATH [--out DIR] [--threads K] [--seed S]
//
// Commands: simulate, resonances, branch, stability, selftest. Failures exit
// nonzero with a machine-readable error JSON on stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dropwave/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral simulation and bifurcation analysis of 2D capillary drops "
               "with constant vorticity"};
  app.require_subcommand(0, 0);

  std::string command, config_path, out_dir;
  int threads = 0;
  long long seed = -1;
  app.add_option("command", command, "simulate | resonances | branch | stability | selftest")
      ->required();
  app.add_option("--config", config_path, "path to the JSON run configuration");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--threads", threads, "worker threads for parameter sweeps");
  app.add_option("--seed", seed, "random seed (overrides the config)");

  CLI11_PARSE(app, argc, argv);

  auto fail = [&](const std::string& message) {
    nlohmann::json err{{"error", message}, {"command", command}};
    std::cerr << err.dump() << std::endl;
    return 1;
  };

  try {
    std::string text = "{\"sigma0\": 1.0, \"alpha0\": 0.0}";
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) return fail("cannot read config file " + config_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    } else if (command != "selftest") {
      return fail("--config is required for this command");
    }
    auto config = dropwave::parse_config(text);
    if (threads > 0) config.threads = threads;
    if (seed >= 0) config.seed = static_cast<unsigned long long>(seed);
    if (const char* env = std::getenv("DROPWAVE_OUT"); env && out_dir.empty()) out_dir = env;
    return dropwave::run_command(command, config, std::cout, out_dir);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}
