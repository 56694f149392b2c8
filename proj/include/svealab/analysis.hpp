#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "svealab/solver.hpp"

namespace svea::analysis {

struct Peak {
  double position = 0.0;
  double height = 0.0;  // |psi|^2
  double snapshot_time = 0.0;
};

struct PeakOptions {
  double threshold = 0.0;  // absolute |psi|^2; <= 0 means 2% of the global max
  double min_separation = 1.0;
  // Drop maxima whose prominence is below this fraction of their height.
  double prominence_fraction = 0.1;
};

inline constexpr double kDefaultThresholdFraction = 0.02;
inline constexpr double kDefaultWindow = 0.25;

/// Local maxima of |psi|^2 above threshold, merged greedily by height within
/// min_separation, positions refined by 3-point parabolic interpolation.
/// Grid end points are never peaks.
std::vector<Peak> find_peaks(const FieldState& state, double threshold,
                             double min_separation = 1.0, double prominence_fraction = 0.1);

// |psi|^2-weighted centroid of each peak's lobe (bounded by the neighbouring
// minima), in the same order as peaks.
std::vector<double> structure_centroids(const FieldState& state, std::span<const Peak> peaks);

// Largest |psi|^2 over all snapshots.
double global_peak(const Trajectory& traj);

// Absolute threshold: options.threshold, or 2% of global_peak when <= 0.
double resolve_threshold(const Trajectory& traj, const PeakOptions& options);

// Indices of the snapshots in the trailing fraction `window` of the run.
// Throws DomainError for window outside (0, 1] or an empty trajectory.
std::pair<std::size_t, std::size_t> window_range(const Trajectory& traj, double window);

std::vector<int> peak_count_series(const Trajectory& traj, const PeakOptions& options = {});

/// Modal peak count over the trailing window (ties go to the larger count).
int count_structures(const Trajectory& traj, double window = kDefaultWindow,
                     const PeakOptions& options = {});

// Number of transitions between "at least high" and "at most low" in the
// series, ignoring values in between.
int count_alternations(std::span<const int> counts, int high = 3, int low = 2);

/// (max - min) / mean of the central-peak height series over the window.
/// The central peak is the detected peak nearest x = 0; snapshots without
/// one use max |psi|^2. Throws DomainError for an empty window.
double oscillation_metric(const Trajectory& traj, double window = kDefaultWindow,
                          const PeakOptions& options = {});

struct TrackPoint {
  double time = 0.0;
  double x = 0.0;
  double height = 0.0;
};

struct Track {
  int id = 0;
  std::vector<TrackPoint> points;
};

/// Nearest-neighbour linking of peaks across the window's snapshots; a peak
/// farther than gate from every live track starts a new one.
std::vector<Track> track_structures(const Trajectory& traj, double window = kDefaultWindow,
                                    const PeakOptions& options = {}, double gate = 2.0);

// Tracks seen in at least `fraction` of the window's snapshots.
std::vector<Track> persistent_tracks(std::span<const Track> tracks, std::size_t snapshot_count,
                                     double fraction = 0.8);

// CSV with header time,peak_index,x,height.
std::string tracks_csv(std::span<const Track> tracks);

struct StabilityPoint {
  double alpha = 0.0;
  double psi0_opt = 0.0;
  double metric_value = 0.0;
  double psi0_lo = 0.0;  // final scanned range
  double psi0_hi = 0.0;
  int widenings = 0;
  int diverged_runs = 0;  // skipped samples
};

struct ScanTemplate {
  ModelSpec model = make_bessel_nls();
  double min_length = 80.0;
  double widths_per_domain = 8.0;  // L = max(min_length, widths_per_domain / alpha)
  std::size_t n = 2048;
  double min_t_final = 20.0;
  double t_scale = 2.0;  // t_final = max(min_t_final, t_scale / alpha^2)
  double dt = 0.01;
  int snapshot_stride = 50;
  double window = 1.0;
  int refine_iterations = 14;
  int max_widenings = 3;
};

struct Psi0Range {
  double lo = 0.1;
  double hi = 1.0;
  int samples = 19;
};

// Grid and run settings the template assigns to a given alpha.
Grid1D scan_grid(const ScanTemplate& tpl, double alpha);
RunConfig scan_run_config(const ScanTemplate& tpl, double alpha);

// Oscillation metric of psi0 sech(alpha x) under the template.
double stability_metric(const ScanTemplate& tpl, double alpha, double psi0);

/// Coarse scan of psi0 per alpha, then golden-section refinement around the
/// best sample. The range is widened when the minimum sits on its edge.
/// Runs up to `jobs` propagations concurrently.
std::vector<StabilityPoint> scan_stability(std::span<const double> alphas, const Psi0Range& range,
                                           const ScanTemplate& tpl = {}, int jobs = 1);

struct StableLine {
  double psi0 = 0.0;
  double k = 0.0;
};

/// psi0 = 4 alpha and phase rate k = (alpha^2 - 1)/2 (omega = lambda = 1).
StableLine stable_line_prediction(double alpha);

// CSV with header alpha,psi0_opt,metric,predicted_psi0.
std::string scan_csv(std::span<const StabilityPoint> points);

}  // namespace svea::analysis
