#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "svealab/errors.hpp"
#include "svealab/models.hpp"

namespace svea {

using Complex = std::complex<double>;

// Periodic grid x_j = -L/2 + j L/n, j = 0..n-1.
class Grid1D {
 public:
  // Throws ConfigError unless n >= 16 is a power of two and L > 0.
  Grid1D(std::size_t n, double length);

  std::size_t n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / static_cast<double>(n_); }
  double x(std::size_t j) const noexcept {
    return -0.5 * length_ + spacing() * static_cast<double>(j);
  }
  std::vector<double> points() const;
  // k_j = 2 pi j / L in FFT ordering (0, 1, ..., n/2-1, -n/2, ..., -1).
  std::vector<double> wavenumbers() const;

  bool operator==(const Grid1D&) const = default;

 private:
  std::size_t n_;
  double length_;
};

struct FieldState {
  Grid1D grid;
  std::vector<Complex> values;
  double time = 0.0;

  // Throws DomainError on a length mismatch or a non-finite value.
  void validate() const;
};

FieldState make_state(const Grid1D& grid, const std::function<Complex(double)>& profile,
                      double time = 0.0);

// sum |psi_j|^2 dx
double mass(const FieldState& state);
// max |psi_j|^2
double peak_intensity(const FieldState& state);

struct RunConfig {
  double dt = 1e-3;
  double t_final = 0.0;
  int snapshot_stride = 100;
  bool dealias = false;  // 2/3 rule on the linear sub-steps
  ModelSpec model{};
  double stability_guard = 0.5;  // require |dt| * max|V| < guard

  // Throws ConfigError when dt <= 0, t_final < 0, stride < 1 or the model is
  // not an NLS family.
  void validate() const;
  std::size_t step_count() const;
};

struct StepDiagnostic {
  std::size_t step = 0;
  double time = 0.0;
  double mass = 0.0;
  double peak = 0.0;  // max |psi|^2 at snapshot steps, NaN elsewhere
};

struct Trajectory {
  std::vector<FieldState> snapshots;  // t = 0, every stride steps, and the final state
  std::vector<StepDiagnostic> diagnostics;  // one row per step, including step 0

  std::vector<double> mass_series() const;
  std::vector<double> peak_series() const;  // per snapshot
  // max over steps of |mass - mass_0| / mass_0; 0 for a zero field.
  double max_relative_mass_drift() const;
};

// Non-finite field after a step. Carries everything computed before it.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time, Trajectory partial)
      : Error(what), time_(time), partial_(std::move(partial)) {}
  double time() const noexcept { return time_; }
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  double time_;
  Trajectory partial_;
};

/// Strang split-step Fourier integrator: half linear step (spectrum times
/// exp(-i D k^2 dt/2)), full nonlinear step (psi exp(-i V(|psi|) dt)), half
/// linear step. Consecutive steps fuse the trailing and leading half steps;
/// store() applies any owed half step. Owns its FFT plans; one instance per
/// thread.
class SplitStepPropagator {
 public:
  SplitStepPropagator(const Grid1D& grid, const ModelSpec& model, double dt,
                      bool dealias = false, double stability_guard = 0.5);
  ~SplitStepPropagator();
  SplitStepPropagator(const SplitStepPropagator&) = delete;
  SplitStepPropagator& operator=(const SplitStepPropagator&) = delete;

  void load(const std::vector<Complex>& values);
  // One step of the loaded field. Throws StabilityGuardError if
  // |dt| max|V| reaches the guard.
  void advance();
  // sum |psi|^2 dx of the current field, from the spectrum.
  double mass() const;
  void store(std::vector<Complex>& values) const;

  // load, advance, store.
  void step(std::vector<Complex>& values);

  double dt() const noexcept { return dt_; }

 private:
  struct Plans;
  Grid1D grid_;
  ModelSpec model_;
  double dt_;
  double guard_;
  std::unique_ptr<Plans> plans_;
};

/// One Strang step. dt may be negative (backward integration).
/// Throws DivergenceError if the result is not finite.
FieldState step(const FieldState& state, const ModelSpec& model, double dt);

/// Repeated step() up to cfg.t_final; the last step is shortened if t_final is
/// not a multiple of dt. Throws DivergenceError with the partial trajectory.
Trajectory propagate(const FieldState& initial, const RunConfig& cfg);

// Snapshot file: "SVEA1", u64 n, f64 L, f64 time, n (re, im) pairs, all
// little-endian.
std::string encode_snapshot(const FieldState& state);
FieldState decode_snapshot(std::string_view bytes);
void write_snapshot(const std::filesystem::path& path, const FieldState& state);
FieldState read_snapshot(const std::filesystem::path& path);

// CSV with header step,time,mass,peak.
std::string mass_csv(const Trajectory& traj);

// Writes snap_NNNNN.svea files, mass.csv and trajectory.txt (a manifest
// listing the snapshot files) into dir.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj);

}  // namespace svea
