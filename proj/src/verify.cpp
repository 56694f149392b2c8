#include "svealab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>

#include "svealab/errors.hpp"
#include "svealab/parallel.hpp"

namespace svea::verify {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// 4th-order central second derivative: (-f2 + 16 f1 - 30 f0 + 16 f-1 - f-2) / 12h^2
cd second_derivative(const cd& fm2, const cd& fm1, const cd& f0, const cd& fp1,
                     const cd& fp2, double h) {
  return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
}

// 4th-order central first derivative: (f-2 - 8 f-1 + 8 f1 - f2) / 12h
cd first_derivative(const cd& fm2, const cd& fm1, const cd& fp1, const cd& fp2,
                    double h) {
  return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
}

void require_grid(double x_min, double x_max, int n_points) {
  if (!(x_max > x_min) || n_points < 5) {
    throw DomainError("residual grid needs x_max > x_min and at least 5 points");
  }
}

std::vector<cd> sample(const AnalyticSolution& sol, std::span<const double> xs, double t) {
  std::vector<cd> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval_solution(sol, xs[i], t);
  return out;
}

ResidualReport make_report(const AnalyticSolution& sol, double x_min, double x_max,
                           int n_points, std::span<const double> t_samples) {
  ResidualReport r;
  r.solution_id = sol.id;
  r.x_min = x_min;
  r.x_max = x_max;
  r.n_points = n_points;
  r.t_samples.assign(t_samples.begin(), t_samples.end());
  return r;
}

void finish(ResidualReport& r) {
  r.relative_residual = r.max_abs_residual / std::max(r.normalizer, 1.0);
}

}  // namespace

std::string ResidualReport::grid_description() const {
  std::ostringstream os;
  os << "x=[" << x_min << "," << x_max << "] n=" << n_points << " t={";
  for (std::size_t i = 0; i < t_samples.size(); ++i) os << (i ? "," : "") << t_samples[i];
  os << "}";
  return os.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(std::max(n, 0)));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

bool is_time_dependent_kg(SolutionId id) noexcept { return id == SolutionId::SgKink; }

ResidualSetup default_residual_setup(SolutionId id) {
  ResidualSetup s;
  s.solution.id = id;
  SolutionParams& p = s.solution.params;
  const std::vector<double> nls_times{0.0, 0.4, 1.0};
  switch (id) {
    case SolutionId::CubicKgSn:
    case SolutionId::CubicKgCn:
      break;
    case SolutionId::CubicKgDc:
      // zeros of cn(x|-1) at x = +/-1.311
      s.x_min = -1.0;
      s.x_max = 1.0;
      break;
    case SolutionId::CubicNlsSn:
      p.m = 0.6;
      s.t_samples = nls_times;
      break;
    case SolutionId::CubicNlsCn:
      p.m = -0.5;
      s.t_samples = nls_times;
      break;
    case SolutionId::CubicNlsDc:
      p.m = 0.3;  // zeros of cn at x = +/-1.714
      s.x_min = -1.4;
      s.x_max = 1.4;
      s.t_samples = nls_times;
      break;
    case SolutionId::DwKgKink:
    case SolutionId::DwNlsTanh:
      s.x_min = -6.0;
      s.x_max = 6.0;
      if (id == SolutionId::DwNlsTanh) s.t_samples = nls_times;
      break;
    case SolutionId::DwKgSn:
    case SolutionId::DwKgDc:
      p.mass = 1.3;
      p.c = 1.0;  // parameter (m_s^2 - c^2)/c^2 = 0.69, zeros of cn at +/-2.07
      if (id == SolutionId::DwKgDc) {
        s.x_min = -1.6;
        s.x_max = 1.6;
      }
      break;
    case SolutionId::DwKgCn:
      p.mass = 1.0;
      p.c = 1.3;  // parameter 0.204, real amplitude
      break;
    case SolutionId::DwKgConst:
      break;
    case SolutionId::DwNlsSn:
      p.mass = 1.3;
      p.m = 0.6;
      s.t_samples = nls_times;
      break;
    case SolutionId::DwNlsCn:
      p.mass = 1.3;
      p.m = -0.5;
      s.t_samples = nls_times;
      break;
    case SolutionId::DwNlsDc:
      p.mass = 1.3;
      p.m = 0.3;
      s.x_min = -1.4;
      s.x_max = 1.4;
      s.t_samples = nls_times;
      break;
    case SolutionId::DwNlsConst:
      p.a = 0.7;
      s.t_samples = nls_times;
      break;
    case SolutionId::CqKgSn:
      // radicand vanishes where sn(x|1/5) = -1, x = -1.66 + 6.64 k
      p.sigma = 1.0;
      p.lambda = 15.0 / 16.0;
      s.x_min = -1.0;
      s.x_max = 4.0;
      break;
    case SolutionId::CqNlsSn:
      // radicand vanishes where sn(x|0.6) = -1, x = -1.95 + 7.80 k
      p.sigma = 1.0;
      p.m = 0.6;
      p.lambda = 3.0 / (16.0 * 0.6);
      s.x_min = -1.3;
      s.x_max = 5.2;
      s.t_samples = nls_times;
      break;
    case SolutionId::SgKink:
      p.nu = 0.5;
      s.x_min = -6.0;
      s.x_max = 6.0;
      s.t_samples = {0.0, 0.4};
      break;
    case SolutionId::SgImag:
      // |sn(x/sqrt2 | -1)| = 1 at x = +/-1.854
      s.x_min = -1.5;
      s.x_max = 1.5;
      break;
    case SolutionId::BesselUniform:
      p.psi0 = 3.0;
      s.t_samples = nls_times;
      break;
  }
  return s;
}

ResidualReport kg_residual(const ModelSpec& model, const AnalyticSolution& sol,
                           double x_min, double x_max, int n_points,
                           std::span<const double> t_samples) {
  if (!is_kg(model.family) || !is_kg_solution(sol.id)) {
    throw FamilyMismatchError("kg_residual: " + std::string(to_string(sol.id)) +
                              " with model " + std::string(to_string(model.family)));
  }
  require_grid(x_min, x_max, n_points);
  const std::vector<double> xs = linspace(x_min, x_max, n_points);
  const double h = xs[1] - xs[0];
  ResidualReport r = make_report(sol, x_min, x_max, n_points, t_samples);
  const bool moving = is_time_dependent_kg(sol.id);
  const std::vector<double> static_times{0.0};
  const std::span<const double> times = moving ? t_samples : std::span(static_times);

  for (double t : times) {
    const std::vector<cd> f = sample(sol, xs, t);
    std::vector<cd> back2, back1, fwd1, fwd2;
    if (moving) {
      back2 = sample(sol, xs, t - 2.0 * h);
      back1 = sample(sol, xs, t - h);
      fwd1 = sample(sol, xs, t + h);
      fwd2 = sample(sol, xs, t + 2.0 * h);
    }
    for (int i = 0; i < n_points; ++i) r.normalizer = std::max(r.normalizer, std::abs(f[i]));
    for (int i = 2; i < n_points - 2; ++i) {
      const cd phi_xx = second_derivative(f[i - 2], f[i - 1], f[i], f[i + 1], f[i + 2], h);
      cd phi_tt{0.0, 0.0};
      if (moving) phi_tt = second_derivative(back2[i], back1[i], f[i], fwd1[i], fwd2[i], h);
      const cd res = phi_tt - phi_xx + kg_force(model, f[i]);
      r.max_abs_residual = std::max(r.max_abs_residual, std::abs(res));
    }
  }
  finish(r);
  return r;
}

ResidualReport nls_residual(const ModelSpec& model, const AnalyticSolution& sol,
                            double x_min, double x_max, int n_points,
                            std::span<const double> t_samples) {
  if (!is_nls(model.family) || !is_nls_solution(sol.id)) {
    throw FamilyMismatchError("nls_residual: " + std::string(to_string(sol.id)) +
                              " with model " + std::string(to_string(model.family)));
  }
  require_grid(x_min, x_max, n_points);
  const std::vector<double> xs = linspace(x_min, x_max, n_points);
  const double h = xs[1] - xs[0];
  ResidualReport r = make_report(sol, x_min, x_max, n_points, t_samples);

  for (double t : t_samples) {
    const std::vector<cd> f = sample(sol, xs, t);
    const std::vector<cd> back2 = sample(sol, xs, t - 2.0 * h);
    const std::vector<cd> back1 = sample(sol, xs, t - h);
    const std::vector<cd> fwd1 = sample(sol, xs, t + h);
    const std::vector<cd> fwd2 = sample(sol, xs, t + 2.0 * h);
    for (int i = 0; i < n_points; ++i) r.normalizer = std::max(r.normalizer, std::abs(f[i]));
    for (int i = 2; i < n_points - 2; ++i) {
      const cd psi_xx = second_derivative(f[i - 2], f[i - 1], f[i], f[i + 1], f[i + 2], h);
      const cd psi_t = first_derivative(back2[i], back1[i], fwd1[i], fwd2[i], h);
      const double v = nls_nonlinear_phase_rate(model, std::abs(f[i]));
      const cd res = kI * psi_t + model.dispersion * psi_xx - v * f[i];
      r.max_abs_residual = std::max(r.max_abs_residual, std::abs(res));
    }
  }
  finish(r);
  return r;
}

ResidualReport residual(const ResidualSetup& setup, int n_points) {
  const ModelSpec model = model_for(setup.solution);
  if (is_kg_solution(setup.solution.id)) {
    return kg_residual(model, setup.solution, setup.x_min, setup.x_max, n_points,
                       setup.t_samples);
  }
  return nls_residual(model, setup.solution, setup.x_min, setup.x_max, n_points,
                      setup.t_samples);
}

ConvergenceCheck convergence(const ResidualSetup& setup, int n_coarse) {
  ConvergenceCheck c;
  c.coarse = residual(setup, n_coarse);
  c.fine = residual(setup, 2 * n_coarse - 1);
  c.exact = c.coarse.relative_residual < kExactResidualFloor &&
            c.fine.relative_residual < kExactResidualFloor;
  if (c.fine.relative_residual > 0.0) {
    c.ratio = c.coarse.relative_residual / c.fine.relative_residual;
    c.order = c.ratio > 0.0 ? std::log2(c.ratio) : 0.0;
  }
  return c;
}

MappingSetup default_mapping_setup(const MappingPair& pair) {
  MappingSetup s;
  switch (pair.nls_id) {
    case SolutionId::CubicNlsDc:
      s.x_min = -1.2;
      s.x_max = 1.2;
      break;
    case SolutionId::DwNlsTanh:
      s.x_min = -6.0;
      s.x_max = 6.0;
      break;
    case SolutionId::DwNlsSn:
    case SolutionId::DwNlsCn:
    case SolutionId::DwNlsDc:
      s.base.mass = 1.3;
      s.base.c = 1.0;
      if (pair.nls_id == SolutionId::DwNlsDc) {
        s.x_min = -1.8;
        s.x_max = 1.8;
      }
      break;
    case SolutionId::DwNlsConst:
      s.base.mass = 1.3;
      break;
    default:
      break;
  }
  return s;
}

MappingCheck check_mapping(const MappingPair& pair, const SolutionParams& base,
                           std::span<const double> x_grid,
                           std::span<const double> t_samples, double detune) {
  MappingCheck out;
  out.pair = pair;
  std::tie(out.kg, out.nls) = instantiate_mapping(pair, base, detune);
  out.t_samples.assign(t_samples.begin(), t_samples.end());
  std::vector<cd> phi(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) phi[i] = eval_solution(out.kg, x_grid[i], 0.0);
  for (double t : t_samples) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
      worst = std::max(worst, std::abs(eval_solution(out.nls, x_grid[i], t) - phi[i]));
    }
    out.max_diff_per_t.push_back(worst);
    out.max_diff = std::max(out.max_diff, worst);
  }
  return out;
}

std::vector<CatalogRow> verify_catalog(const CatalogOptions& options) {
  const auto ids = all_solution_ids();
  std::vector<CatalogRow> rows(ids.size());
  parallel_for(ids.size(), options.jobs, [&](std::size_t i) {
    const ResidualSetup setup = default_residual_setup(ids[i]);
    CatalogRow& row = rows[i];
    row.report = residual(setup, options.n_points);
    row.convergence = convergence(setup, options.n_convergence);
    row.residual_pass = row.report.relative_residual < options.threshold;
    row.convergence_pass = row.convergence.exact || row.convergence.ratio >= options.min_ratio;
  });
  return rows;
}

std::string format_catalog_report(std::span<const CatalogRow> rows, double threshold) {
  std::ostringstream os;
  os << "# id grid relative_residual convergence_ratio status (threshold " << threshold
     << ")\n";
  for (const CatalogRow& row : rows) {
    os << std::left << std::setw(15) << to_string(row.report.solution_id) << " "
       << row.report.grid_description() << " " << std::scientific << std::setprecision(3)
       << row.report.relative_residual << " ";
    if (row.convergence.exact) {
      os << "exact";
    } else {
      os << std::fixed << std::setprecision(2) << row.convergence.ratio;
    }
    os << " " << (row.pass() ? "PASS" : "FAIL") << "\n";
    os.unsetf(std::ios::floatfield);
  }
  return os.str();
}

std::string format_mapping_report(std::span<const MappingCheck> checks, double tolerance) {
  std::ostringstream os;
  os << "# nls_id kg_id constraint max_diff_per_t status (tolerance " << tolerance << ")\n";
  for (const MappingCheck& c : checks) {
    os << std::left << std::setw(14) << to_string(c.pair.nls_id) << " " << std::setw(12)
       << to_string(c.pair.kg_id) << " [" << c.pair.constraint_note << "]";
    os << std::scientific << std::setprecision(3);
    for (std::size_t i = 0; i < c.t_samples.size(); ++i) {
      os << " t=" << std::defaultfloat << c.t_samples[i] << ":" << std::scientific
         << c.max_diff_per_t[i];
    }
    os << std::defaultfloat << " " << (c.max_diff < tolerance ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

}  // namespace svea::verify
