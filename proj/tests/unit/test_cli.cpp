#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "svealab/commands.hpp"
#include "svealab/config.hpp"
#include "svealab/errors.hpp"

using namespace svea;
using namespace svea::config;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "svealab_cli_tests" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int tool(const std::string& args) {
  const std::string cmd = std::string(SVEA_LAB_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmallRun = R"(
[lab]
name = small
command = run
[grid]
n = 256
length = 40
[run]
initial = sech
psi0 = 3
alpha = 1
dt = 0.005
t_final = 2
snapshot_stride = 20
)";

}  // namespace

TEST_CASE("presets parse and validate") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const LabConfig cfg = load_preset(name);
    CHECK(cfg.command.has_value());
    CHECK_NOTHROW(cfg.validate());
  }
  for (const char* name : {"case1", "case2", "case3", "case4", "scan-fig8", "verify-all", "map-all", "uniform3"}) {
    CHECK_NOTHROW(preset_text(name));
  }
  CHECK_THROWS_AS(preset_text("case9"), ConfigError);
}

TEST_CASE("preset contents") {
  const LabConfig c1 = load_preset("case1");
  CHECK(c1.grid_n == 2048);
  CHECK(c1.grid_length == 80.0);
  CHECK(c1.run.t_final == 30.0);
  CHECK(c1.initial.psi0 == 15.0);
  const LabConfig c4 = load_preset("case4");
  CHECK(c4.grid_n == 4096);
  CHECK(c4.grid_length == 120.0);
  CHECK(c4.initial.kind == InitialKind::Supergaussian);
  CHECK(c4.initial.order == 40.0);
  const LabConfig scan = load_preset("scan-fig8");
  CHECK(scan.scan_alphas == std::vector<double>{0.05, 0.1, 0.15});
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("[bogus]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\nwidth = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\nn = lots\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\ndt = 1e-3x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[map]\npairs = CUBIC_KG_SN\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[model]\nfamily = Quartic\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/svea.ini"), ConfigError);
}

TEST_CASE("overlay keeps unspecified keys") {
  const LabConfig base = load_preset("case1");
  const LabConfig c = parse_config("[run]\nt_final = 5\n", base);
  CHECK(c.run.t_final == 5.0);
  CHECK(c.initial.psi0 == 15.0);
  CHECK(c.grid_n == 2048);
}

TEST_CASE("dump and parse round-trip") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const std::string once = dump_config(load_preset(name));
    CHECK(dump_config(parse_config(once)) == once);
  }
}

TEST_CASE("map command") {
  const fs::path dir = scratch("map");
  const auto out = commands::execute(load_preset("map-all"), dir, "preset:map-all");
  CHECK(out.exit_code == commands::kExitPass);
  CHECK(std::count(out.report.begin(), out.report.end(), '\n') == 10);  // header + nine rows
  CHECK(fs::exists(dir / "map_report.txt"));
  CHECK(fs::exists(dir / "manifest.txt"));

  LabConfig detuned = load_preset("map-all");
  detuned.detune = 0.1;
  CHECK(commands::execute(detuned, scratch("map-detune"), "test").exit_code ==
        commands::kExitChecksFailed);

  const LabConfig empty = parse_config("[map]\npairs =\n", load_preset("map-all"));
  CHECK(commands::execute(empty, scratch("map-empty"), "test").exit_code == commands::kExitUsage);
}

TEST_CASE("verify command thresholds") {
  LabConfig cfg = load_preset("verify-all");
  const auto ok = commands::execute(cfg, scratch("verify"), "preset:verify-all");
  CHECK(ok.exit_code == commands::kExitPass);
  CHECK(ok.report.find("FAIL") == std::string::npos);
  cfg.verify.threshold = 1e-30;
  CHECK(commands::execute(cfg, scratch("verify-strict"), "test").exit_code ==
        commands::kExitChecksFailed);
}

TEST_CASE("scan with no alphas is a usage error") {
  LabConfig cfg = load_preset("scan-fig8");
  cfg.scan_alphas.clear();
  CHECK(commands::execute(cfg, scratch("scan-empty"), "test").exit_code == commands::kExitUsage);
}

TEST_CASE("run artifacts and manifest") {
  const fs::path dir = scratch("run");
  const auto out = commands::execute(parse_config(kSmallRun), dir, "inline");
  REQUIRE(out.exit_code == commands::kExitPass);
  for (const char* f : {"mass.csv", "peak_counts.csv", "tracks.csv", "summary.txt", "config.ini",
                        "manifest.txt", "trajectory.txt", "snap_00000.svea"}) {
    CAPTURE(f);
    CHECK(fs::exists(dir / f));
  }
  const std::string manifest = slurp(dir / "manifest.txt");
  CHECK(manifest.find("tool_version = 1.0.0") != std::string::npos);
  CHECK(manifest.find("wall_seconds") != std::string::npos);
  CHECK(manifest.find("determinism") != std::string::npos);

  // config.ini alone reproduces the run byte for byte
  const fs::path again = scratch("run-again");
  const auto rerun = commands::execute(load_config(dir / "config.ini"), again, "config.ini");
  CHECK(rerun.exit_code == commands::kExitPass);
  for (const char* f : {"mass.csv", "peak_counts.csv", "tracks.csv", "snap_00000.svea"}) {
    CAPTURE(f);
    CHECK(slurp(dir / f) == slurp(again / f));
  }
}

TEST_CASE("expected structure mismatch fails the run") {
  const LabConfig cfg = parse_config(std::string(kSmallRun) + "[analysis]\nexpected_structures = 7\n");
  CHECK(commands::execute(cfg, scratch("run-expect"), "inline").exit_code ==
        commands::kExitChecksFailed);
}

TEST_CASE("divergence exits 3 with partial artifacts") {
  const fs::path dir = scratch("diverge");
  const LabConfig cfg = parse_config("[run]\npsi0 = 1e160\n", parse_config(kSmallRun));
  const auto out = commands::execute(cfg, dir, "inline");
  CHECK(out.exit_code == commands::kExitDivergence);
  CHECK(fs::exists(dir / "summary.txt"));
  CHECK(fs::exists(dir / "mass.csv"));
}

TEST_CASE("uniform3 keeps a flat peak track") {
  const fs::path dir = scratch("uniform3");
  const auto out = commands::execute(load_preset("uniform3"), dir, "preset:uniform3");
  REQUIRE(out.exit_code == commands::kExitPass);
  std::istringstream csv(slurp(dir / "mass.csv"));
  std::string line;
  std::getline(csv, line);
  int snapshots = 0;
  while (std::getline(csv, line)) {
    const auto comma = line.rfind(',');
    const std::string peak = line.substr(comma + 1);
    if (peak.empty()) continue;
    ++snapshots;
    CHECK(std::stod(peak) == doctest::Approx(9.0).epsilon(1e-12));
  }
  CHECK(snapshots > 2);
}

TEST_CASE("tool exit codes") {
  const std::string out = "--output " + scratch("tool").string();
  CHECK(tool("--list-presets") == 0);
  CHECK(tool("--catalog") == 0);
  CHECK(tool("verify --config /nonexistent/cfg.ini " + out) == 2);
  CHECK(tool("frobnicate --preset map-all " + out) == 2);
  CHECK(tool("--preset no-such-preset " + out) == 2);
  CHECK(tool("map --preset map-all " + out) == 0);
  CHECK(tool("map --preset map-all --detune 0.1 " + out) == 1);
  CHECK(tool("verify --preset verify-all --threshold 1e-30 " + out) == 1);
  CHECK(tool("verify --preset verify-all --jobs 2 " + out) == 0);
}
