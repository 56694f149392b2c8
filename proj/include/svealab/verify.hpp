#pragma once

#include <span>
#include <string>
#include <vector>

#include "svealab/models.hpp"
#include "svealab/solutions.hpp"

namespace svea::verify {

struct ResidualReport {
  SolutionId solution_id = SolutionId::CubicKgSn;
  double x_min = 0.0;
  double x_max = 0.0;
  int n_points = 0;
  std::vector<double> t_samples;
  double max_abs_residual = 0.0;
  double normalizer = 0.0;  // max |field| on the grid
  double relative_residual = 0.0;  // max_abs_residual / max(normalizer, 1)

  std::string grid_description() const;
};

// Solution instance, x window (clear of poles) and time samples used by the
// catalog sweep.
struct ResidualSetup {
  AnalyticSolution solution;
  double x_min = -3.0;
  double x_max = 3.0;
  std::vector<double> t_samples{0.0};
};

ResidualSetup default_residual_setup(SolutionId id);

// Whether a KG entry depends on t (only the moving sine-Gordon kink does).
bool is_time_dependent_kg(SolutionId id) noexcept;

/// Residual of d_tt phi - d_xx phi + N(phi) with 4th-order central stencils at
/// the interior points (two-point margins). Static entries take d_tt = 0; the
/// moving kink uses the same stencil in t with step equal to the grid spacing.
/// A pole inside the stencil surfaces as PoleError.
ResidualReport kg_residual(const ModelSpec& model, const AnalyticSolution& sol,
                           double x_min, double x_max, int n_points,
                           std::span<const double> t_samples);

/// Residual of i psi_t + D psi'' - V(|psi|) psi; psi_t by the 4th-order
/// central first-difference in t with step equal to the grid spacing.
ResidualReport nls_residual(const ModelSpec& model, const AnalyticSolution& sol,
                            double x_min, double x_max, int n_points,
                            std::span<const double> t_samples);

// Dispatches on the family of setup.solution.
ResidualReport residual(const ResidualSetup& setup, int n_points);

// Relative residuals below this are exact up to rounding; the h^4 ratio test
// is meaningless there.
inline constexpr double kExactResidualFloor = 1e-11;

struct ConvergenceCheck {
  ResidualReport coarse;
  ResidualReport fine;  // grid spacing halved: 2 n - 1 points
  double ratio = 0.0;   // coarse / fine
  double order = 0.0;   // log2(ratio)
  bool exact = false;   // both residuals at the rounding floor
};

ConvergenceCheck convergence(const ResidualSetup& setup, int n_coarse);

struct MappingCheck {
  MappingPair pair;
  AnalyticSolution kg;
  AnalyticSolution nls;
  std::vector<double> t_samples;
  std::vector<double> max_diff_per_t;
  double max_diff = 0.0;
};

/// max over x_grid of |psi(x, t) - phi(x)| for each t, with the NLS entry
/// instantiated at the quenched parameter (shifted by detune when nonzero).
MappingCheck check_mapping(const MappingPair& pair, const SolutionParams& base,
                           std::span<const double> x_grid,
                           std::span<const double> t_samples, double detune = 0.0);

struct MappingSetup {
  SolutionParams base;
  double x_min = -3.0;
  double x_max = 3.0;
  int n_points = 401;
};

MappingSetup default_mapping_setup(const MappingPair& pair);

std::vector<double> linspace(double lo, double hi, int n);

struct CatalogRow {
  ResidualReport report;
  ConvergenceCheck convergence;
  bool residual_pass = false;
  bool convergence_pass = false;
  bool pass() const { return residual_pass && convergence_pass; }
};

struct CatalogOptions {
  int n_points = 2001;
  int n_convergence = 201;  // coarse grid of the h^4 check
  double threshold = 1e-6;
  double min_ratio = 8.0;
  int jobs = 1;
};

std::vector<CatalogRow> verify_catalog(const CatalogOptions& options);

// One line per row: id, grid, relative residual, ratio, PASS/FAIL.
std::string format_catalog_report(std::span<const CatalogRow> rows, double threshold);

std::string format_mapping_report(std::span<const MappingCheck> checks, double tolerance);

}  // namespace svea::verify
