#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svealab/analysis.hpp"
#include "svealab/models.hpp"
#include "svealab/solutions.hpp"
#include "svealab/solver.hpp"
#include "svealab/verify.hpp"

namespace svea::config {

enum class Command { Verify, MapCheck, Run, Scan };

std::string_view to_string(Command c) noexcept;
// Throws ConfigError for unknown names.
Command command_from_string(std::string_view name);

enum class InitialKind { Sech, Supergaussian, Uniform, Catalog };

struct InitialCondition {
  InitialKind kind = InitialKind::Sech;
  double psi0 = 1.0;
  double alpha = 1.0;    // sech(alpha x)
  double width = 10.0;   // supergaussian psi0 exp(-(x/width)^order)
  double order = 40.0;
  AnalyticSolution solution{};  // catalog entry evaluated at t = 0
};

FieldState build_initial(const InitialCondition& ic, const Grid1D& grid);

// NLS ids of every mapping_table() row.
std::vector<SolutionId> all_mapping_pairs();

struct LabConfig {
  std::string name = "run";
  std::optional<Command> command;

  ModelSpec model = make_bessel_nls();
  std::size_t grid_n = 2048;
  double grid_length = 80.0;
  InitialCondition initial;
  RunConfig run;  // run.model is synced from model
  bool write_snapshots = true;

  analysis::PeakOptions peaks;
  double window = analysis::kDefaultWindow;
  double gate = 2.0;
  std::optional<int> expected_structures;

  verify::CatalogOptions verify;

  std::vector<SolutionId> map_pairs = all_mapping_pairs();  // NLS side of each pair
  std::vector<double> map_t_samples{0.0, 1.0, 10.0};
  double map_tolerance = 1e-10;
  double detune = 0.0;

  std::vector<double> scan_alphas;
  analysis::Psi0Range scan_range;
  analysis::ScanTemplate scan_template;

  int jobs = 1;

  // Throws ConfigError when the selected command lacks what it needs (empty
  // pair or alpha list, bad grid, ...).
  void validate() const;
};

/// Parses INI text with sections [lab] [model] [grid] [run] [analysis]
/// [verify] [map] [scan] [solution]. Keys absent from the text keep the
/// values already in `base`. Throws ConfigError on syntax errors, unknown
/// sections or keys, and unparseable values.
LabConfig parse_config(std::string_view text, LabConfig base = {});
LabConfig load_config(const std::filesystem::path& path, LabConfig base = {});

// Writes every setting back as INI; parse_config(dump(c)) reproduces c.
std::string dump_config(const LabConfig& config);

std::vector<std::string> preset_names();
// INI text of a preset; throws ConfigError for unknown names.
std::string preset_text(std::string_view name);
LabConfig load_preset(std::string_view name);

}  // namespace svea::config
