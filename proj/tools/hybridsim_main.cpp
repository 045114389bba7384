#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hybridsim/config.hpp"
#include "hybridsim/scenarios.hpp"

using namespace hybridsim;

int main(int argc, char** argv) {
  CLI::App app{
      "hybridsim: numerical reproduction suite for a trapped-ion / "
      "charge-qubit hybrid processor"};

  std::string scenario_arg;
  std::string config_path;
  std::string seeds_arg;
  std::string out_dir;
  std::string format_arg;
  std::vector<std::string> sets;
  int workers = 0;

  app.add_option("scenario", scenario_arg,
                 "gate_fidelity | gate_time | noise_echo | dissipation | switch | "
                 "balance | report_all")
      ->required();
  app.add_option("--config", config_path, "flat key = value [unit] file");
  app.add_option("--set", sets, "override, e.g. --set \"C_m=2e-16 F\"");
  app.add_option("--seeds", seeds_arg, "seed list: a,b,c or lo..hi");
  app.add_option("--out", out_dir, "output directory (default $HYBRIDSIM_OUT or ./out)");
  app.add_option("--format", format_arg, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--workers", workers, "worker threads (default: hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    ScenarioConfig config = load_config(config_path);
    config.scenario = parse_scenario(scenario_arg);
    for (const std::string& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("--set expects key=value, got '" + s + "'");
      }
      apply_override(config, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!seeds_arg.empty()) config.seed_list = parse_seed_list(seeds_arg);
    if (!out_dir.empty()) {
      config.output_dir = out_dir;
    } else if (const char* env = std::getenv("HYBRIDSIM_OUT")) {
      config.output_dir = env;
    }
    if (format_arg == "csv") config.format = OutputFormat::csv;
    if (format_arg == "json") config.format = OutputFormat::json;
    if (workers > 0) config.workers = workers;

    const RunManifest manifest = run_scenario(config);
    return manifest.all_pass() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
