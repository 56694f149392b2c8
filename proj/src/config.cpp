#include "svealab/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "svealab/errors.hpp"

namespace svea::config {
namespace {

namespace pt = boost::property_tree;

constexpr std::array<std::pair<Command, std::string_view>, 4> kCommands{{
    {Command::Verify, "verify"},
    {Command::MapCheck, "map"},
    {Command::Run, "run"},
    {Command::Scan, "scan"},
}};

constexpr std::array<std::pair<InitialKind, std::string_view>, 4> kInitials{{
    {InitialKind::Sech, "sech"},
    {InitialKind::Supergaussian, "supergaussian"},
    {InitialKind::Uniform, "uniform"},
    {InitialKind::Catalog, "catalog"},
}};

const std::map<std::string, std::set<std::string>, std::less<>> kKeys{
    {"lab", {"name", "command", "jobs"}},
    {"model", {"family", "lambda", "mass", "sigma", "omega", "dispersion"}},
    {"grid", {"n", "length"}},
    {"run",
     {"dt", "t_final", "snapshot_stride", "dealias", "stability_guard", "initial", "psi0",
      "alpha", "width", "order", "write_snapshots"}},
    {"solution",
     {"id", "c", "lambda", "mass", "sigma", "m", "omega", "a", "x0", "nu", "delta", "psi0",
      "sign_outer", "sign_inner"}},
    {"analysis",
     {"window", "threshold", "min_separation", "prominence", "gate", "expected_structures"}},
    {"verify", {"threshold", "n_points", "n_convergence", "min_ratio"}},
    {"map", {"pairs", "t_samples", "tolerance", "detune"}},
    {"scan",
     {"alphas", "psi0_lo", "psi0_hi", "psi0_samples", "n", "dt", "min_length",
      "widths_per_domain", "min_t_final", "t_scale", "snapshot_stride", "window",
      "refine_iterations", "max_widenings"}},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
  throw ConfigError("bad value for " + std::string(key) + ": '" + std::string(value) + "' (" +
                    std::string(what) + ")");
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    bad_value(key, text, "expected a finite number");
  }
  return v;
}

long long parse_int(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) bad_value(key, text, "expected an integer");
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(key, text, "expected true or false");
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(key, item));
  return out;
}

int parse_sign(std::string_view key, std::string_view text) {
  const long long v = parse_int(key, text);
  if (v != 1 && v != -1) bad_value(key, text, "expected 1 or -1");
  return static_cast<int>(v);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <typename T>
std::string join(const std::vector<T>& items, auto&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += fmt(items[i]);
  }
  return out;
}

const std::map<std::string, std::string, std::less<>> kPresets{
    {"case1", R"([lab]
name = case1
command = run

[model]
family = BesselNLS
lambda = 1
omega = 1

[grid]
n = 2048
length = 80

[run]
initial = sech
psi0 = 15
alpha = 1
dt = 0.001
t_final = 30
snapshot_stride = 100

[analysis]
expected_structures = 3
)"},
    {"case2", R"([lab]
name = case2
command = run

[model]
family = BesselNLS
lambda = 1
omega = 1

[grid]
n = 2048
length = 80

[run]
initial = sech
psi0 = 22
alpha = 1
dt = 0.001
t_final = 80
snapshot_stride = 100

[analysis]
expected_structures = 5
)"},
    {"case3", R"([lab]
name = case3
command = run

[model]
family = BesselNLS
lambda = 1
omega = 1

[grid]
n = 2048
length = 80

[run]
initial = sech
psi0 = 0.4
alpha = 0.1
dt = 0.001
t_final = 200
snapshot_stride = 500

[analysis]
window = 1
expected_structures = 1
)"},
    {"case4", R"([lab]
name = case4
command = run

[model]
family = BesselNLS
lambda = 1
omega = 1

[grid]
n = 4096
length = 120

[run]
initial = supergaussian
psi0 = 10
width = 10
order = 40
dt = 0.001
t_final = 60
snapshot_stride = 100

[analysis]
window = 1
)"},
    {"uniform3", R"([lab]
name = uniform3
command = run

[model]
family = BesselNLS
lambda = 1
omega = 1

[grid]
n = 256
length = 80

[run]
initial = uniform
psi0 = 3
dt = 0.001
t_final = 10
snapshot_stride = 100
)"},
    {"scan-fig8", R"([lab]
name = scan-fig8
command = scan

[model]
family = BesselNLS
lambda = 1
omega = 1

[scan]
alphas = 0.05, 0.1, 0.15
psi0_lo = 0.1
psi0_hi = 1.0
psi0_samples = 19
n = 512
dt = 0.01
min_length = 80
widths_per_domain = 8
min_t_final = 20
t_scale = 2
window = 1
)"},
    {"verify-all", R"([lab]
name = verify-all
command = verify

[verify]
threshold = 1e-6
n_points = 2001
n_convergence = 201
min_ratio = 8
)"},
    {"map-all", R"([lab]
name = map-all
command = map

[map]
pairs = all
t_samples = 0, 1, 10
tolerance = 1e-10
)"},
};

}  // namespace

std::vector<SolutionId> all_mapping_pairs() {
  std::vector<SolutionId> ids;
  for (const auto& p : mapping_table()) ids.push_back(p.nls_id);
  return ids;
}

std::string_view to_string(Command c) noexcept {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

Command command_from_string(std::string_view name) {
  for (const auto& [cmd, n] : kCommands) {
    if (n == name) return cmd;
  }
  throw ConfigError("unknown command '" + std::string(name) + "' (verify, map, run, scan)");
}

FieldState build_initial(const InitialCondition& ic, const Grid1D& grid) {
  switch (ic.kind) {
    case InitialKind::Sech:
      return make_state(grid, [&](double x) { return Complex{ic.psi0 / std::cosh(ic.alpha * x)}; });
    case InitialKind::Supergaussian:
      return make_state(grid, [&](double x) {
        return Complex{ic.psi0 * std::exp(-std::pow(std::abs(x / ic.width), ic.order))};
      });
    case InitialKind::Uniform:
      return make_state(grid, [&](double) { return Complex{ic.psi0}; });
    case InitialKind::Catalog:
      if (!is_nls_solution(ic.solution.id)) {
        throw ConfigError("initial catalog solution must be an NLS entry");
      }
      return make_state(grid, [&](double x) { return eval_solution(ic.solution, x, 0.0); });
  }
  throw ConfigError("unknown initial condition");
}

void LabConfig::validate() const {
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (!command) throw ConfigError("no command selected (set [lab] command or pass one)");
  switch (*command) {
    case Command::Verify:
      if (verify.n_points < 5 || verify.n_convergence < 5) {
        throw ConfigError("verify grids need at least 5 points");
      }
      if (!(verify.threshold > 0.0)) throw ConfigError("verify threshold must be > 0");
      break;
    case Command::MapCheck:
      if (map_pairs.empty()) throw ConfigError("empty mapping pair selection");
      if (map_t_samples.empty()) throw ConfigError("empty mapping t_samples");
      break;
    case Command::Run: {
      const Grid1D grid(grid_n, grid_length);
      RunConfig r = run;
      r.model = model;
      r.validate();
      if (!(window > 0.0 && window <= 1.0)) throw ConfigError("window must lie in (0, 1]");
      break;
    }
    case Command::Scan:
      if (scan_alphas.empty()) throw ConfigError("empty alpha list");
      if (model.family != ModelFamily::BesselNLS) {
        throw ConfigError("stability scans use the BesselNLS model");
      }
      if (!(scan_range.lo > 0.0 && scan_range.hi > scan_range.lo && scan_range.samples >= 3)) {
        throw ConfigError("scan needs 0 < psi0_lo < psi0_hi and psi0_samples >= 3");
      }
      for (double a : scan_alphas) {
        if (!(a > 0.0)) throw ConfigError("alphas must be > 0");
      }
      (void)Grid1D(scan_template.n, scan_template.min_length);
      break;
  }
}

LabConfig parse_config(std::string_view text, LabConfig c) {
  pt::ptree tree;
  try {
    std::istringstream is{std::string(text)};
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto known = kKeys.find(section);
    if (known == kKeys.end()) {
      throw ConfigError(body.empty() ? "key '" + section + "' outside any section"
                                     : "unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!known->second.contains(key)) {
        throw ConfigError("unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
  auto each = [&](const char* section, auto&& handle) {
    const auto s = tree.get_child_optional(section);
    if (!s) return;
    for (const auto& [key, value] : *s) {
      handle(key, value.data(), std::string(section) + "." + key);
    }
  };

  each("lab", [&](const std::string& k, const std::string& v, const std::string& full) {
    if (k == "name") c.name = trim(v);
    if (k == "command") c.command = command_from_string(trim(v));
    if (k == "jobs") c.jobs = static_cast<int>(parse_int(full, v));
  });

  bool dispersion_set = false;
  bool model_touched = false;
  each("model", [&](const std::string& k, const std::string& v, const std::string& full) {
    model_touched = true;
    if (k == "family") c.model.family = model_family_from_string(trim(v));
    if (k == "lambda") c.model.lambda = parse_double(full, v);
    if (k == "mass") c.model.mass = parse_double(full, v);
    if (k == "sigma") c.model.sigma = parse_double(full, v);
    if (k == "omega") c.model.omega = parse_double(full, v);
    if (k == "dispersion") {
      c.model.dispersion = parse_double(full, v);
      dispersion_set = true;
    }
  });
  if (model_touched && !dispersion_set) {
    c.model.dispersion = ModelSpec::canonical_dispersion(c.model.family, c.model.omega);
  }

  each("grid", [&](const std::string& k, const std::string& v, const std::string& full) {
    if (k == "n") {
      const long long n = parse_int(full, v);
      if (n < 0) bad_value(full, v, "expected a positive integer");
      c.grid_n = static_cast<std::size_t>(n);
    }
    if (k == "length") c.grid_length = parse_double(full, v);
  });

  each("run", [&](const std::string& k, const std::string& v, const std::string& full) {
    if (k == "dt") c.run.dt = parse_double(full, v);
    if (k == "t_final") c.run.t_final = parse_double(full, v);
    if (k == "snapshot_stride") c.run.snapshot_stride = static_cast<int>(parse_int(full, v));
    if (k == "dealias") c.run.dealias = parse_bool(full, v);
    if (k == "stability_guard") c.run.stability_guard = parse_double(full, v);
    if (k == "write_snapshots") c.write_snapshots = parse_bool(full, v);
    if (k == "psi0") c.initial.psi0 = parse_double(full, v);
    if (k == "alpha") c.initial.alpha = parse_double(full, v);
    if (k == "width") c.initial.width = parse_double(full, v);
    if (k == "order") c.initial.order = parse_double(full, v);
    if (k == "initial") {
      const std::string name = trim(v);
      const auto it = std::find_if(kInitials.begin(), kInitials.end(),
                                   [&](const auto& p) { return p.second == name; });
      if (it == kInitials.end()) bad_value(full, v, "sech, supergaussian, uniform or catalog");
      c.initial.kind = it->first;
    }
  });

  each("solution", [&](const std::string& k, const std::string& v, const std::string& full) {
    SolutionParams& p = c.initial.solution.params;
    if (k == "id") {
      const auto id = solution_id_from_string(trim(v));
      if (!id) bad_value(full, v, "unknown catalog id");
      c.initial.solution.id = *id;
    }
    if (k == "c") p.c = parse_double(full, v);
    if (k == "lambda") p.lambda = parse_double(full, v);
    if (k == "mass") p.mass = parse_double(full, v);
    if (k == "sigma") p.sigma = parse_double(full, v);
    if (k == "m") p.m = parse_double(full, v);
    if (k == "omega") p.omega = parse_double(full, v);
    if (k == "a") p.a = parse_double(full, v);
    if (k == "x0") p.x0 = parse_double(full, v);
    if (k == "nu") p.nu = parse_double(full, v);
    if (k == "delta") p.delta = parse_double(full, v);
    if (k == "psi0") p.psi0 = parse_double(full, v);
    if (k == "sign_outer") c.initial.solution.signs.outer = parse_sign(full, v);
    if (k == "sign_inner") c.initial.solution.signs.inner = parse_sign(full, v);
  });

  each("analysis", [&](const std::string& k, const std::string& v, const std::string& full) {
    if (k == "window") c.window = parse_double(full, v);
    if (k == "threshold") c.peaks.threshold = parse_double(full, v);
    if (k == "min_separation") c.peaks.min_separation = parse_double(full, v);
    if (k == "prominence") c.peaks.prominence_fraction = parse_double(full, v);
    if (k == "gate") c.gate = parse_double(full, v);
    if (k == "expected_structures") {
      if (trim(v).empty()) {
        c.expected_structures.reset();
      } else {
        c.expected_structures = static_cast<int>(parse_int(full, v));
      }
    }
  });

  each("verify", [&](const std::string& k, const std::string& v, const std::string& full) {
    if (k == "threshold") c.verify.threshold = parse_double(full, v);
    if (k == "n_points") c.verify.n_points = static_cast<int>(parse_int(full, v));
    if (k == "n_convergence") c.verify.n_convergence = static_cast<int>(parse_int(full, v));
    if (k == "min_ratio") c.verify.min_ratio = parse_double(full, v);
  });

  each("map", [&](const std::string& k, const std::string& v, const std::string& full) {
    if (k == "pairs") {
      c.map_pairs.clear();
      for (const auto& item : split_list(v)) {
        if (item == "all") {
          const auto all = all_mapping_pairs();
          c.map_pairs.insert(c.map_pairs.end(), all.begin(), all.end());
          continue;
        }
        const auto id = solution_id_from_string(item);
        if (!id || !find_mapping(*id)) bad_value(full, item, "not the NLS side of a mapping pair");
        c.map_pairs.push_back(*id);
      }
    }
    if (k == "t_samples") c.map_t_samples = parse_doubles(full, v);
    if (k == "tolerance") c.map_tolerance = parse_double(full, v);
    if (k == "detune") c.detune = parse_double(full, v);
  });

  each("scan", [&](const std::string& k, const std::string& v, const std::string& full) {
    analysis::ScanTemplate& t = c.scan_template;
    if (k == "alphas") c.scan_alphas = parse_doubles(full, v);
    if (k == "psi0_lo") c.scan_range.lo = parse_double(full, v);
    if (k == "psi0_hi") c.scan_range.hi = parse_double(full, v);
    if (k == "psi0_samples") c.scan_range.samples = static_cast<int>(parse_int(full, v));
    if (k == "n") t.n = static_cast<std::size_t>(std::max(0LL, parse_int(full, v)));
    if (k == "dt") t.dt = parse_double(full, v);
    if (k == "min_length") t.min_length = parse_double(full, v);
    if (k == "widths_per_domain") t.widths_per_domain = parse_double(full, v);
    if (k == "min_t_final") t.min_t_final = parse_double(full, v);
    if (k == "t_scale") t.t_scale = parse_double(full, v);
    if (k == "snapshot_stride") t.snapshot_stride = static_cast<int>(parse_int(full, v));
    if (k == "window") t.window = parse_double(full, v);
    if (k == "refine_iterations") t.refine_iterations = static_cast<int>(parse_int(full, v));
    if (k == "max_widenings") t.max_widenings = static_cast<int>(parse_int(full, v));
  });

  c.run.model = c.model;
  c.scan_template.model = c.model;
  return c;
}

LabConfig load_config(const std::filesystem::path& path, LabConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

std::string dump_config(const LabConfig& c) {
  std::ostringstream os;
  auto d = [](double v) { return format_double(v); };
  os << "[lab]\nname = " << c.name << "\n";
  if (c.command) os << "command = " << to_string(*c.command) << "\n";
  os << "jobs = " << c.jobs << "\n\n";

  os << "[model]\nfamily = " << to_string(c.model.family) << "\nlambda = " << d(c.model.lambda)
     << "\nmass = " << d(c.model.mass) << "\nsigma = " << d(c.model.sigma)
     << "\nomega = " << d(c.model.omega) << "\ndispersion = " << d(c.model.dispersion) << "\n\n";

  os << "[grid]\nn = " << c.grid_n << "\nlength = " << d(c.grid_length) << "\n\n";

  const auto initial = std::find_if(kInitials.begin(), kInitials.end(),
                                    [&](const auto& p) { return p.first == c.initial.kind; });
  os << "[run]\ndt = " << d(c.run.dt) << "\nt_final = " << d(c.run.t_final)
     << "\nsnapshot_stride = " << c.run.snapshot_stride
     << "\ndealias = " << (c.run.dealias ? "true" : "false")
     << "\nstability_guard = " << d(c.run.stability_guard) << "\ninitial = " << initial->second
     << "\npsi0 = " << d(c.initial.psi0) << "\nalpha = " << d(c.initial.alpha)
     << "\nwidth = " << d(c.initial.width) << "\norder = " << d(c.initial.order)
     << "\nwrite_snapshots = " << (c.write_snapshots ? "true" : "false") << "\n\n";

  const SolutionParams& p = c.initial.solution.params;
  os << "[solution]\nid = " << to_string(c.initial.solution.id) << "\nc = " << d(p.c)
     << "\nlambda = " << d(p.lambda) << "\nmass = " << d(p.mass) << "\nsigma = " << d(p.sigma)
     << "\nm = " << d(p.m) << "\nomega = " << d(p.omega) << "\na = " << d(p.a)
     << "\nx0 = " << d(p.x0) << "\nnu = " << d(p.nu) << "\ndelta = " << d(p.delta)
     << "\npsi0 = " << d(p.psi0) << "\nsign_outer = " << c.initial.solution.signs.outer
     << "\nsign_inner = " << c.initial.solution.signs.inner << "\n\n";

  os << "[analysis]\nwindow = " << d(c.window) << "\nthreshold = " << d(c.peaks.threshold)
     << "\nmin_separation = " << d(c.peaks.min_separation)
     << "\nprominence = " << d(c.peaks.prominence_fraction) << "\ngate = " << d(c.gate)
     << "\nexpected_structures = "
     << (c.expected_structures ? std::to_string(*c.expected_structures) : "") << "\n\n";

  os << "[verify]\nthreshold = " << d(c.verify.threshold) << "\nn_points = " << c.verify.n_points
     << "\nn_convergence = " << c.verify.n_convergence
     << "\nmin_ratio = " << d(c.verify.min_ratio) << "\n\n";

  os << "[map]\npairs = "
     << join(c.map_pairs, [](SolutionId id) { return std::string(to_string(id)); })
     << "\nt_samples = " << join(c.map_t_samples, d) << "\ntolerance = " << d(c.map_tolerance)
     << "\ndetune = " << d(c.detune) << "\n\n";

  const analysis::ScanTemplate& t = c.scan_template;
  os << "[scan]\nalphas = " << join(c.scan_alphas, d) << "\npsi0_lo = " << d(c.scan_range.lo)
     << "\npsi0_hi = " << d(c.scan_range.hi) << "\npsi0_samples = " << c.scan_range.samples
     << "\nn = " << t.n << "\ndt = " << d(t.dt) << "\nmin_length = " << d(t.min_length)
     << "\nwidths_per_domain = " << d(t.widths_per_domain)
     << "\nmin_t_final = " << d(t.min_t_final) << "\nt_scale = " << d(t.t_scale)
     << "\nsnapshot_stride = " << t.snapshot_stride << "\nwindow = " << d(t.window)
     << "\nrefine_iterations = " << t.refine_iterations
     << "\nmax_widenings = " << t.max_widenings << "\n";
  return os.str();
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : kPresets) out.push_back(name);
  return out;
}

std::string preset_text(std::string_view name) {
  const auto it = kPresets.find(name);
  if (it == kPresets.end()) {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + std::string(name) + "' (" + known + ")");
  }
  return it->second;
}

LabConfig load_preset(std::string_view name) { return parse_config(preset_text(name)); }

}  // namespace svea::config
