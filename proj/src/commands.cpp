#include "svealab/commands.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "svealab/errors.hpp"
#include "svealab/io.hpp"

namespace svea::commands {
namespace {

namespace fs = std::filesystem;
using config::LabConfig;

void emit(CommandOutcome& out, const fs::path& dir, const std::string& name,
          const std::string& content) {
  io::atomic_write(dir / name, content);
  out.artifacts.push_back(name);
}

std::string peak_count_csv(const Trajectory& traj, const std::vector<int>& counts) {
  std::ostringstream os;
  os << "time,count\n" << std::setprecision(12);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    os << traj.snapshots[i].time << ',' << counts[i] << '\n';
  }
  return os.str();
}

// Summary, CSVs and (optionally) snapshots of a finished or partial run.
std::string write_run_artifacts(CommandOutcome& out, const LabConfig& cfg, const fs::path& dir,
                                const Trajectory& traj) {
  if (cfg.write_snapshots) {
    write_trajectory(dir, traj);
    out.artifacts.push_back("trajectory.txt");
  } else {
    io::atomic_write(dir / "mass.csv", mass_csv(traj));
  }
  out.artifacts.push_back("mass.csv");

  std::ostringstream summary;
  summary << std::setprecision(10);
  summary << "snapshots = " << traj.snapshots.size() << '\n'
          << "final_time = " << traj.snapshots.back().time << '\n'
          << "max_relative_mass_drift = " << traj.max_relative_mass_drift() << '\n';
  if (analysis::global_peak(traj) > 0.0) {
    const std::vector<int> counts = analysis::peak_count_series(traj, cfg.peaks);
    emit(out, dir, "peak_counts.csv", peak_count_csv(traj, counts));
    const auto tracks = analysis::track_structures(traj, 1.0, cfg.peaks, cfg.gate);
    emit(out, dir, "tracks.csv", analysis::tracks_csv(tracks));
    const auto [begin, end] = analysis::window_range(traj, cfg.window);
    const auto persistent = analysis::track_structures(traj, cfg.window, cfg.peaks, cfg.gate);
    summary << "structure_count = " << analysis::count_structures(traj, cfg.window, cfg.peaks)
            << '\n'
            << "persistent_structures = "
            << analysis::persistent_tracks(persistent, end - begin).size() << '\n'
            << "oscillation_metric = " << analysis::oscillation_metric(traj, cfg.window, cfg.peaks)
            << '\n'
            << "count_alternations = " << analysis::count_alternations(counts) << '\n';
  }
  return summary.str();
}

}  // namespace

std::string RunManifest::to_text() const {
  std::ostringstream os;
  os << "[manifest]\n"
     << "command = " << config::to_string(command) << '\n'
     << "config = " << config_path << '\n'
     << "output_dir = " << output_dir.string() << '\n'
     << "tool_version = " << tool_version << '\n'
     << "wall_seconds = " << std::fixed << std::setprecision(3) << wall_seconds << '\n'
     << "exit_code = " << exit_code << '\n'
     << "determinism = no random numbers are used; the same config reproduces every CSV "
        "byte for byte\n"
     << "rerun = svea_lab --config config.ini --output <dir>\n\n[artifacts]\n";
  for (std::size_t i = 0; i < artifacts.size(); ++i) os << "file" << i << " = " << artifacts[i] << '\n';
  return os.str();
}

CommandOutcome cmd_verify(const LabConfig& cfg, const fs::path& out_dir) {
  CommandOutcome out;
  verify::CatalogOptions options = cfg.verify;
  options.jobs = cfg.jobs;
  const auto rows = verify::verify_catalog(options);
  out.report = verify::format_catalog_report(rows, options.threshold);
  emit(out, out_dir, "verify_report.txt", out.report);
  const bool all_pass = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass(); });
  out.exit_code = all_pass ? kExitPass : kExitChecksFailed;
  return out;
}

CommandOutcome cmd_map_check(const LabConfig& cfg, const fs::path& out_dir) {
  if (cfg.map_pairs.empty()) throw ConfigError("empty mapping pair selection");
  CommandOutcome out;
  std::vector<verify::MappingCheck> checks;
  for (SolutionId id : cfg.map_pairs) {
    const auto pair = find_mapping(id);
    if (!pair) throw ConfigError(std::string(to_string(id)) + " is not a mapped NLS entry");
    const verify::MappingSetup setup = verify::default_mapping_setup(*pair);
    const auto xs = verify::linspace(setup.x_min, setup.x_max, setup.n_points);
    checks.push_back(verify::check_mapping(*pair, setup.base, xs, cfg.map_t_samples, cfg.detune));
  }
  out.report = verify::format_mapping_report(checks, cfg.map_tolerance);
  if (cfg.detune != 0.0) out.report = "# diagnostic: detune = " + std::to_string(cfg.detune) + "\n" + out.report;
  emit(out, out_dir, "map_report.txt", out.report);
  const bool all_pass = std::all_of(checks.begin(), checks.end(),
                                    [&](const auto& c) { return c.max_diff < cfg.map_tolerance; });
  out.exit_code = all_pass ? kExitPass : kExitChecksFailed;
  return out;
}

CommandOutcome cmd_run(const LabConfig& cfg, const fs::path& out_dir) {
  CommandOutcome out;
  const Grid1D grid(cfg.grid_n, cfg.grid_length);
  RunConfig run = cfg.run;
  run.model = cfg.model;
  const FieldState initial = config::build_initial(cfg.initial, grid);
  try {
    const Trajectory traj = propagate(initial, run);
    std::string summary = write_run_artifacts(out, cfg, out_dir, traj);
    if (cfg.expected_structures && analysis::global_peak(traj) > 0.0) {
      const int found = analysis::count_structures(traj, cfg.window, cfg.peaks);
      const bool ok = found == *cfg.expected_structures;
      summary += "expected_structures = " + std::to_string(*cfg.expected_structures) +
                 (ok ? " PASS\n" : " FAIL\n");
      if (!ok) out.exit_code = kExitChecksFailed;
    }
    out.report = summary;
  } catch (const DivergenceError& e) {
    out.report = "diverged: " + std::string(e.what()) + "\n";
    if (!e.partial().snapshots.empty()) out.report += write_run_artifacts(out, cfg, out_dir, e.partial());
    out.exit_code = kExitDivergence;
  }
  emit(out, out_dir, "summary.txt", out.report);
  return out;
}

CommandOutcome cmd_scan(const LabConfig& cfg, const fs::path& out_dir) {
  if (cfg.scan_alphas.empty()) throw ConfigError("empty alpha list");
  CommandOutcome out;
  analysis::ScanTemplate tpl = cfg.scan_template;
  tpl.model = cfg.model;
  const auto points = analysis::scan_stability(cfg.scan_alphas, cfg.scan_range, tpl, cfg.jobs);
  emit(out, out_dir, "stability.csv", analysis::scan_csv(points));
  std::ostringstream os;
  os << std::setprecision(6);
  for (const auto& p : points) {
    const double predicted = analysis::stable_line_prediction(p.alpha).psi0;
    os << "alpha = " << p.alpha << "  psi0_opt = " << p.psi0_opt << "  4 alpha = " << predicted
       << "  deviation = " << std::abs(p.psi0_opt / predicted - 1.0) * 100.0
       << "%  metric = " << p.metric_value << "  range = [" << p.psi0_lo << ", " << p.psi0_hi
       << "]";
    if (p.diverged_runs > 0) os << "  diverged_runs = " << p.diverged_runs;
    os << '\n';
  }
  out.report = os.str();
  emit(out, out_dir, "scan_summary.txt", out.report);
  return out;
}

CommandOutcome execute(const LabConfig& cfg, const fs::path& out_dir,
                       std::string_view config_source) {
  const auto start = std::chrono::steady_clock::now();
  CommandOutcome out;
  try {
    cfg.validate();
    io::ensure_writable_dir(out_dir);
    switch (*cfg.command) {
      case config::Command::Verify:
        out = cmd_verify(cfg, out_dir);
        break;
      case config::Command::MapCheck:
        out = cmd_map_check(cfg, out_dir);
        break;
      case config::Command::Run:
        out = cmd_run(cfg, out_dir);
        break;
      case config::Command::Scan:
        out = cmd_scan(cfg, out_dir);
        break;
    }
  } catch (const ConfigError& e) {
    return {kExitUsage, std::string("config error: ") + e.what() + "\n", {}};
  }
  io::atomic_write(out_dir / "config.ini", config::dump_config(cfg));
  out.artifacts.push_back("config.ini");
  RunManifest manifest;
  manifest.command = *cfg.command;
  manifest.config_path = std::string(config_source);
  manifest.output_dir = out_dir;
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest.exit_code = out.exit_code;
  manifest.artifacts = out.artifacts;
  io::atomic_write(out_dir / "manifest.txt", manifest.to_text());
  return out;
}

}  // namespace svea::commands
