#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "svealab/config.hpp"

namespace svea::commands {

inline constexpr int kExitPass = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDivergence = 3;

inline constexpr std::string_view kToolVersion = "1.0.0";

struct RunManifest {
  config::Command command = config::Command::Run;
  std::string config_path;  // source the config came from (file or preset)
  std::filesystem::path output_dir;
  std::string tool_version{kToolVersion};
  double wall_seconds = 0.0;
  int exit_code = 0;
  std::vector<std::string> artifacts;

  std::string to_text() const;
};

struct CommandOutcome {
  int exit_code = kExitPass;
  std::string report;  // human-readable summary, also written to the output dir
  std::vector<std::string> artifacts;  // file names relative to the output dir
};

// Each command writes its artifacts into out_dir (created if needed).
CommandOutcome cmd_verify(const config::LabConfig& cfg, const std::filesystem::path& out_dir);
CommandOutcome cmd_map_check(const config::LabConfig& cfg, const std::filesystem::path& out_dir);
CommandOutcome cmd_run(const config::LabConfig& cfg, const std::filesystem::path& out_dir);
CommandOutcome cmd_scan(const config::LabConfig& cfg, const std::filesystem::path& out_dir);

/// Validates cfg, checks out_dir is writable, dispatches on cfg.command and
/// writes config.ini plus manifest.txt next to the artifacts. Configuration
/// problems yield kExitUsage.
CommandOutcome execute(const config::LabConfig& cfg, const std::filesystem::path& out_dir,
                       std::string_view config_source);

}  // namespace svea::commands
