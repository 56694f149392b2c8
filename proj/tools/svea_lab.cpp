#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "svealab/commands.hpp"
#include "svealab/errors.hpp"
#include "svealab/solutions.hpp"

namespace {

namespace fs = std::filesystem;
using namespace svea;

fs::path default_output(const std::string& name) {
  const char* root = std::getenv("SVEA_LAB_OUTPUT");
  return fs::path(root && *root ? root : "svea_lab_out") / name;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-form KG/NLS verification and Bessel-NLS simulation lab"};
  app.set_version_flag("--version", std::string(commands::kToolVersion));

  std::string command;
  std::string config_path;
  std::string preset;
  std::string output;
  int jobs = 0;
  std::optional<double> threshold;
  std::optional<double> detune;
  bool list_presets = false;
  bool dump_catalog = false;
  bool print_config = false;

  app.add_option("command", command, "verify | map | run | scan (default: the config's [lab] command)")
      ->check(CLI::IsMember({"verify", "map", "run", "scan"}));
  app.add_option("--config", config_path, "INI run configuration");
  app.add_option("--preset", preset, "built-in configuration (applied before --config)");
  app.add_option("--output", output, "artifact directory (default $SVEA_LAB_OUTPUT/<name>)");
  app.add_option("--jobs", jobs, "concurrent propagations / checks")->check(CLI::PositiveNumber);
  app.add_option("--threshold", threshold, "relative residual threshold for verify");
  app.add_option("--detune", detune, "shift the quenched parameter (map diagnostic)");
  app.add_flag("--list-presets", list_presets, "print preset names and exit");
  app.add_flag("--catalog", dump_catalog, "print the solution catalog and exit");
  app.add_flag("--print-config", print_config, "print the resolved config and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : commands::kExitUsage;
  }

  if (list_presets) {
    for (const auto& name : config::preset_names()) std::cout << name << '\n';
    return 0;
  }
  if (dump_catalog) {
    std::cout << catalog_dump();
    return 0;
  }

  config::LabConfig cfg;
  std::string source = "defaults";
  try {
    if (!preset.empty()) {
      cfg = config::load_preset(preset);
      source = "preset:" + preset;
    }
    if (!config_path.empty()) {
      if (!fs::is_regular_file(config_path)) {
        throw ConfigError("config file not found: " + config_path);
      }
      cfg = config::load_config(config_path, cfg);
      source = config_path;
    }
    if (preset.empty() && config_path.empty()) {
      throw ConfigError("pass --config PATH or --preset NAME");
    }
    if (!command.empty()) cfg.command = config::command_from_string(command);
    if (jobs > 0) cfg.jobs = jobs;
    if (threshold) cfg.verify.threshold = *threshold;
    if (detune) cfg.detune = *detune;
  } catch (const Error& e) {
    std::cerr << "svea_lab: " << e.what() << '\n';
    return commands::kExitUsage;
  }

  if (print_config) {
    std::cout << config::dump_config(cfg);
    return 0;
  }

  const fs::path out_dir = output.empty() ? default_output(cfg.name) : fs::path(output);
  try {
    const auto outcome = commands::execute(cfg, out_dir, source);
    std::cout << outcome.report;
    if (outcome.exit_code != commands::kExitUsage) {
      std::cout << "artifacts: " << out_dir.string() << '\n';
    } else {
      std::cerr << "svea_lab: usage/config error\n";
    }
    return outcome.exit_code;
  } catch (const Error& e) {
    std::cerr << "svea_lab: " << e.what() << '\n';
    return commands::kExitChecksFailed;
  }
}
