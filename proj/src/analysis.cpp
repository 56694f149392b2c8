#include "svealab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "svealab/errors.hpp"
#include "svealab/parallel.hpp"

namespace svea::analysis {
namespace {

std::vector<double> intensity(const FieldState& state) {
  std::vector<double> out(state.values.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::norm(state.values[j]);
  return out;
}

double prominence(const std::vector<double>& f, std::size_t i) {
  double left = f[i];
  for (std::size_t j = i; j-- > 0;) {
    if (f[j] > f[i]) break;
    left = std::min(left, f[j]);
  }
  double right = f[i];
  for (std::size_t j = i + 1; j < f.size(); ++j) {
    if (f[j] > f[i]) break;
    right = std::min(right, f[j]);
  }
  return f[i] - std::max(left, right);
}

std::size_t nearest_index(const Grid1D& grid, double x) {
  const double j = std::round((x - grid.x(0)) / grid.spacing());
  return static_cast<std::size_t>(std::clamp(j, 0.0, static_cast<double>(grid.n() - 1)));
}

std::vector<Peak> snapshot_peaks(const FieldState& s, double threshold, const PeakOptions& o) {
  return find_peaks(s, threshold, o.min_separation, o.prominence_fraction);
}

// Golden-section minimisation of f on [a, b].
std::pair<double, double> golden_section(const std::function<double(double)>& f, double a,
                                         double b, int iterations) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

std::vector<Peak> find_peaks(const FieldState& state, double threshold, double min_separation,
                             double prominence_fraction) {
  if (!(threshold > 0.0)) throw DomainError("find_peaks: threshold must be > 0");
  const std::vector<double> f = intensity(state);
  const Grid1D& g = state.grid;
  std::vector<Peak> candidates;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    if (!(f[i] > threshold && f[i] > f[i - 1] && f[i] >= f[i + 1])) continue;
    if (prominence(f, i) < prominence_fraction * f[i]) continue;
    const double curvature = f[i - 1] - 2.0 * f[i] + f[i + 1];
    double offset = 0.0;
    double height = f[i];
    if (curvature < 0.0) {
      offset = 0.5 * (f[i - 1] - f[i + 1]) / curvature;
      height = f[i] - 0.25 * (f[i - 1] - f[i + 1]) * offset;
    }
    candidates.push_back({g.x(i) + offset * g.spacing(), height, state.time});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Peak& a, const Peak& b) { return a.height > b.height; });
  std::vector<Peak> kept;
  for (const Peak& p : candidates) {
    const bool clear = std::none_of(kept.begin(), kept.end(), [&](const Peak& q) {
      return std::abs(q.position - p.position) < min_separation;
    });
    if (clear) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Peak& a, const Peak& b) { return a.position < b.position; });
  return kept;
}

std::vector<double> structure_centroids(const FieldState& state, std::span<const Peak> peaks) {
  const std::vector<double> f = intensity(state);
  std::vector<double> out;
  out.reserve(peaks.size());
  for (const Peak& p : peaks) {
    const std::size_t i = nearest_index(state.grid, p.position);
    std::size_t lo = i;
    while (lo > 0 && f[lo - 1] <= f[lo]) --lo;
    std::size_t hi = i;
    while (hi + 1 < f.size() && f[hi + 1] <= f[hi]) ++hi;
    double weight = 0.0;
    double moment = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      weight += f[j];
      moment += f[j] * state.grid.x(j);
    }
    out.push_back(weight > 0.0 ? moment / weight : p.position);
  }
  return out;
}

double global_peak(const Trajectory& traj) {
  double g = 0.0;
  for (const auto& s : traj.snapshots) g = std::max(g, peak_intensity(s));
  return g;
}

double resolve_threshold(const Trajectory& traj, const PeakOptions& options) {
  if (options.threshold > 0.0) return options.threshold;
  const double g = global_peak(traj);
  return g > 0.0 ? kDefaultThresholdFraction * g : std::numeric_limits<double>::min();
}

std::pair<std::size_t, std::size_t> window_range(const Trajectory& traj, double window) {
  if (traj.snapshots.empty()) throw DomainError("empty trajectory");
  if (!(window > 0.0 && window <= 1.0)) throw DomainError("window must lie in (0, 1]");
  const std::size_t n = traj.snapshots.size();
  const auto len = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(window * static_cast<double>(n) - 1e-9)));
  return {n - std::min(len, n), n};
}

std::vector<int> peak_count_series(const Trajectory& traj, const PeakOptions& options) {
  const double threshold = resolve_threshold(traj, options);
  std::vector<int> counts;
  counts.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots) {
    counts.push_back(static_cast<int>(snapshot_peaks(s, threshold, options).size()));
  }
  return counts;
}

int count_structures(const Trajectory& traj, double window, const PeakOptions& options) {
  const auto [begin, end] = window_range(traj, window);
  const double threshold = resolve_threshold(traj, options);
  std::map<int, int> histogram;
  for (std::size_t i = begin; i < end; ++i) {
    ++histogram[static_cast<int>(snapshot_peaks(traj.snapshots[i], threshold, options).size())];
  }
  int best = 0;
  int best_votes = -1;
  for (const auto& [count, votes] : histogram) {
    if (votes >= best_votes) {
      best = count;
      best_votes = votes;
    }
  }
  return best;
}

int count_alternations(std::span<const int> counts, int high, int low) {
  int alternations = 0;
  int state = 0;  // +1 high, -1 low
  for (int c : counts) {
    const int now = c >= high ? 1 : (c <= low ? -1 : 0);
    if (now == 0) continue;
    if (state != 0 && now != state) ++alternations;
    state = now;
  }
  return alternations;
}

double oscillation_metric(const Trajectory& traj, double window, const PeakOptions& options) {
  const auto [begin, end] = window_range(traj, window);
  const double threshold = resolve_threshold(traj, options);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const FieldState& s = traj.snapshots[i];
    const std::vector<Peak> peaks = snapshot_peaks(s, threshold, options);
    double h = peak_intensity(s);
    if (!peaks.empty()) {
      h = std::min_element(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
            return std::abs(a.position) < std::abs(b.position);
          })->height;
    }
    lo = std::min(lo, h);
    hi = std::max(hi, h);
    sum += h;
  }
  const double mean = sum / static_cast<double>(end - begin);
  if (!(mean > 0.0)) throw DomainError("oscillation_metric: zero field in window");
  return (hi - lo) / mean;
}

std::vector<Track> track_structures(const Trajectory& traj, double window,
                                    const PeakOptions& options, double gate) {
  const auto [begin, end] = window_range(traj, window);
  const double threshold = resolve_threshold(traj, options);
  constexpr std::size_t kMaxGap = 3;  // snapshots a track may miss and still continue
  std::vector<Track> tracks;
  std::vector<std::size_t> last_seen;
  for (std::size_t i = begin; i < end; ++i) {
    const std::vector<Peak> peaks = snapshot_peaks(traj.snapshots[i], threshold, options);
    struct Candidate {
      double distance;
      std::size_t track;
      std::size_t peak;
    };
    std::vector<Candidate> pairs;
    for (std::size_t t = 0; t < tracks.size(); ++t) {
      if (i - last_seen[t] > kMaxGap) continue;
      for (std::size_t p = 0; p < peaks.size(); ++p) {
        const double d = std::abs(tracks[t].points.back().x - peaks[p].position);
        if (d < gate) pairs.push_back({d, t, p});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Candidate& a, const Candidate& b) {
      return a.distance != b.distance ? a.distance < b.distance
                                      : (a.track != b.track ? a.track < b.track : a.peak < b.peak);
    });
    std::vector<bool> track_used(tracks.size(), false);
    std::vector<bool> peak_used(peaks.size(), false);
    for (const Candidate& c : pairs) {
      if (track_used[c.track] || peak_used[c.peak]) continue;
      track_used[c.track] = peak_used[c.peak] = true;
      tracks[c.track].points.push_back({peaks[c.peak].snapshot_time, peaks[c.peak].position,
                                        peaks[c.peak].height});
      last_seen[c.track] = i;
    }
    for (std::size_t p = 0; p < peaks.size(); ++p) {
      if (peak_used[p]) continue;
      tracks.push_back({static_cast<int>(tracks.size()),
                        {{peaks[p].snapshot_time, peaks[p].position, peaks[p].height}}});
      last_seen.push_back(i);
    }
  }
  return tracks;
}

std::vector<Track> persistent_tracks(std::span<const Track> tracks, std::size_t snapshot_count,
                                     double fraction) {
  std::vector<Track> out;
  for (const Track& t : tracks) {
    if (static_cast<double>(t.points.size()) >= fraction * static_cast<double>(snapshot_count)) {
      out.push_back(t);
    }
  }
  return out;
}

std::string tracks_csv(std::span<const Track> tracks) {
  struct Row {
    double time;
    int id;
    double x;
    double height;
  };
  std::vector<Row> rows;
  for (const Track& t : tracks) {
    for (const TrackPoint& p : t.points) rows.push_back({p.time, t.id, p.x, p.height});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.time != b.time ? a.time < b.time : a.id < b.id;
  });
  std::ostringstream os;
  os << "time,peak_index,x,height\n";
  os.precision(12);
  for (const Row& r : rows) os << r.time << ',' << r.id << ',' << r.x << ',' << r.height << '\n';
  return os.str();
}

Grid1D scan_grid(const ScanTemplate& tpl, double alpha) {
  return Grid1D(tpl.n, std::max(tpl.min_length, tpl.widths_per_domain / alpha));
}

RunConfig scan_run_config(const ScanTemplate& tpl, double alpha) {
  RunConfig cfg;
  cfg.model = tpl.model;
  cfg.dt = tpl.dt;
  cfg.t_final = std::max(tpl.min_t_final, tpl.t_scale / (alpha * alpha));
  cfg.snapshot_stride = tpl.snapshot_stride;
  return cfg;
}

double stability_metric(const ScanTemplate& tpl, double alpha, double psi0) {
  const FieldState init = make_state(scan_grid(tpl, alpha), [&](double x) {
    return Complex{psi0 / std::cosh(alpha * x), 0.0};
  });
  return oscillation_metric(propagate(init, scan_run_config(tpl, alpha)), tpl.window);
}

std::vector<StabilityPoint> scan_stability(std::span<const double> alphas, const Psi0Range& range,
                                           const ScanTemplate& tpl, int jobs) {
  if (alphas.empty()) throw ConfigError("scan_stability: empty alpha list");
  if (!(range.lo > 0.0 && range.hi > range.lo && range.samples >= 3)) {
    throw ConfigError("scan_stability: need 0 < lo < hi and at least 3 samples");
  }
  for (double a : alphas) {
    if (!(a > 0.0)) throw ConfigError("scan_stability: alpha must be > 0");
  }
  constexpr double kFailed = std::numeric_limits<double>::infinity();
  auto safe_metric = [&](double alpha, double psi0, int& failures) {
    try {
      return stability_metric(tpl, alpha, psi0);
    } catch (const DivergenceError&) {
    } catch (const StabilityGuardError&) {
    }
    ++failures;
    return kFailed;
  };

  struct AlphaScan {
    double lo, hi;
    std::vector<double> psi0, metric;
    int widenings = 0;
    int failures = 0;
    bool settled = false;
  };
  std::vector<AlphaScan> scans(alphas.size());
  for (auto& s : scans) {
    s.lo = range.lo;
    s.hi = range.hi;
  }

  // Coarse scan, all unsettled (alpha, psi0) cells at once; widen and repeat
  // when the best sample is on the range edge.
  for (int round = 0; round <= tpl.max_widenings; ++round) {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t a = 0; a < scans.size(); ++a) {
      if (scans[a].settled) continue;
      scans[a].psi0.resize(range.samples);
      scans[a].metric.assign(range.samples, kFailed);
      for (int k = 0; k < range.samples; ++k) {
        scans[a].psi0[k] = scans[a].lo + (scans[a].hi - scans[a].lo) * k / (range.samples - 1);
        cells.emplace_back(a, static_cast<std::size_t>(k));
      }
    }
    if (cells.empty()) break;
    std::vector<int> failures(cells.size(), 0);
    parallel_for(cells.size(), jobs, [&](std::size_t c) {
      auto [a, k] = cells[c];
      scans[a].metric[k] = safe_metric(alphas[a], scans[a].psi0[k], failures[c]);
    });
    for (std::size_t c = 0; c < cells.size(); ++c) scans[cells[c].first].failures += failures[c];
    for (auto& s : scans) {
      if (s.settled) continue;
      const auto best = std::min_element(s.metric.begin(), s.metric.end()) - s.metric.begin();
      const double span = s.hi - s.lo;
      if (best == 0 && round < tpl.max_widenings) {
        s.lo = std::max(s.lo / 2.0, 1e-3);
        s.hi = s.lo + span;
        ++s.widenings;
      } else if (best == range.samples - 1 && round < tpl.max_widenings) {
        s.lo = s.hi - span / 2.0;
        s.hi = s.lo + 2.0 * span;
        ++s.widenings;
      } else {
        s.settled = true;
      }
    }
  }

  std::vector<StabilityPoint> points(alphas.size());
  parallel_for(alphas.size(), jobs, [&](std::size_t a) {
    AlphaScan& s = scans[a];
    const std::size_t best =
        std::min_element(s.metric.begin(), s.metric.end()) - s.metric.begin();
    const double lo = s.psi0[best == 0 ? 0 : best - 1];
    const double hi = s.psi0[std::min(best + 1, s.psi0.size() - 1)];
    int failures = 0;
    auto [psi0, metric] = golden_section(
        [&](double p) { return safe_metric(alphas[a], p, failures); }, lo, hi,
        tpl.refine_iterations);
    if (s.metric[best] < metric) {
      psi0 = s.psi0[best];
      metric = s.metric[best];
    }
    points[a] = {alphas[a], psi0, metric, s.lo, s.hi, s.widenings, s.failures + failures};
  });
  return points;
}

StableLine stable_line_prediction(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("stable_line_prediction: alpha must be > 0");
  return {4.0 * alpha, (alpha * alpha - 1.0) / 2.0};
}

std::string scan_csv(std::span<const StabilityPoint> points) {
  std::ostringstream os;
  os << "alpha,psi0_opt,metric,predicted_psi0\n";
  os.precision(10);
  for (const StabilityPoint& p : points) {
    os << p.alpha << ',' << p.psi0_opt << ',' << p.metric_value << ','
       << stable_line_prediction(p.alpha).psi0 << '\n';
  }
  return os.str();
}

}  // namespace svea::analysis
