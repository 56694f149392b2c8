#include "svealab/solutions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "svealab/errors.hpp"

namespace svea {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// Principal square root of a possibly negative real.
cd csqrt(double v) { return std::sqrt(cd{v, 0.0}); }

cd phase(double rate, double t) { return std::exp(kI * (rate * t)); }

constexpr std::array<SolutionId, kCatalogSize> kIds{
    SolutionId::CubicKgSn,  SolutionId::CubicKgCn,  SolutionId::CubicKgDc,
    SolutionId::CubicNlsSn, SolutionId::CubicNlsCn, SolutionId::CubicNlsDc,
    SolutionId::DwKgKink,   SolutionId::DwKgSn,     SolutionId::DwKgCn,
    SolutionId::DwKgDc,     SolutionId::DwKgConst,  SolutionId::DwNlsTanh,
    SolutionId::DwNlsSn,    SolutionId::DwNlsCn,    SolutionId::DwNlsDc,
    SolutionId::DwNlsConst, SolutionId::CqKgSn,     SolutionId::CqNlsSn,
    SolutionId::SgKink,     SolutionId::SgImag,     SolutionId::BesselUniform,
};

constexpr std::array<std::string_view, kCatalogSize> kIdNames{
    "CUBIC_KG_SN",  "CUBIC_KG_CN",  "CUBIC_KG_DC",  "CUBIC_NLS_SN", "CUBIC_NLS_CN",
    "CUBIC_NLS_DC", "DW_KG_KINK",   "DW_KG_SN",     "DW_KG_CN",     "DW_KG_DC",
    "DW_KG_CONST",  "DW_NLS_TANH",  "DW_NLS_SN",    "DW_NLS_CN",    "DW_NLS_DC",
    "DW_NLS_CONST", "CQ_KG_SN",     "CQ_NLS_SN",    "SG_KINK",      "SG_IMAG",
    "BESSEL_UNIFORM",
};

const std::array<CatalogEntry, kCatalogSize> kCatalog{{
    {SolutionId::CubicKgSn, ModelFamily::CubicKG,
     "phi = +/- i c sqrt(2/lambda) sn(c x | -1)", "c, lambda", "lambda != 0",
     "all real x"},
    {SolutionId::CubicKgCn, ModelFamily::CubicKG,
     "phi = +/- (i c / sqrt(lambda)) cn(c x | 1/2)", "c, lambda", "lambda != 0",
     "all real x"},
    {SolutionId::CubicKgDc, ModelFamily::CubicKG,
     "phi = +/- c sqrt(2/lambda) dc(c x | -1)", "c, lambda", "lambda != 0",
     "x away from zeros of cn(c x | -1)"},
    {SolutionId::CubicNlsSn, ModelFamily::CubicNLS,
     "psi = +/- c sqrt(2m/lambda) sn(c x | m) exp(-i (1+m) c^2 t / omega)",
     "c, lambda, m, omega", "lambda != 0, omega > 0", "m > 0"},
    {SolutionId::CubicNlsCn, ModelFamily::CubicNLS,
     "psi = +/- i c sqrt(2m/lambda) cn(c x | m) exp(-i (1-2m) c^2 t / omega)",
     "c, lambda, m, omega", "lambda != 0, omega > 0", "m < 0"},
    {SolutionId::CubicNlsDc, ModelFamily::CubicNLS,
     "psi = +/- c sqrt(2/lambda) dc(c x | m) exp(-i (1+m) c^2 t / omega)",
     "c, lambda, m, omega", "lambda != 0, omega > 0", "x away from zeros of cn"},
    {SolutionId::DwKgKink, ModelFamily::DoubleWellKG,
     "phi = +/- (m_s / sqrt(lambda)) tanh(+/- (m_s / sqrt(2)) (x - x0))",
     "m_s, lambda, x0", "lambda != 0", "all real x"},
    {SolutionId::DwKgSn, ModelFamily::DoubleWellKG,
     "phi = +/- sqrt(2/lambda) sqrt(m_s^2 - c^2) sn(c x | (m_s^2 - c^2)/c^2)",
     "c, m_s, lambda", "lambda != 0, c != 0", "all real x"},
    {SolutionId::DwKgCn, ModelFamily::DoubleWellKG,
     "phi = +/- i sqrt((c^2 - m_s^2)/lambda) cn(c x | (c^2 - m_s^2)/(2 c^2))",
     "c, m_s, lambda", "lambda != 0, c != 0", "all real x"},
    {SolutionId::DwKgDc, ModelFamily::DoubleWellKG,
     "phi = +/- c sqrt(2/lambda) dc(c x | (m_s^2 - c^2)/c^2)", "c, m_s, lambda",
     "lambda != 0, c != 0", "x away from zeros of cn"},
    {SolutionId::DwKgConst, ModelFamily::DoubleWellKG, "phi = +/- m_s / sqrt(lambda)",
     "m_s, lambda", "lambda != 0", "all real x"},
    {SolutionId::DwNlsTanh, ModelFamily::DoubleWellNLS,
     "psi = +/- c sqrt(2/lambda) tanh(+/- c (x - x0)) exp(i (m_s^2 - 2 c^2) t / omega)",
     "c, m_s, lambda, omega, x0", "lambda != 0, omega > 0", "all real x"},
    {SolutionId::DwNlsSn, ModelFamily::DoubleWellNLS,
     "psi = +/- c sqrt(2m/lambda) sn(c x | m) exp(i (m_s^2 - (1+m) c^2) t / omega)",
     "c, m_s, lambda, m, omega", "lambda != 0, omega > 0", "m > 0"},
    {SolutionId::DwNlsCn, ModelFamily::DoubleWellNLS,
     "psi = +/- i c sqrt(2m/lambda) cn(c x | m) exp(i (m_s^2 - (1-2m) c^2) t / omega)",
     "c, m_s, lambda, m, omega", "lambda != 0, omega > 0", "m < 0"},
    {SolutionId::DwNlsDc, ModelFamily::DoubleWellNLS,
     "psi = +/- c sqrt(2/lambda) dc(c x | m) exp(i (m_s^2 - (1+m) c^2) t / omega)",
     "c, m_s, lambda, m, omega", "lambda != 0, omega > 0", "x away from zeros of cn"},
    {SolutionId::DwNlsConst, ModelFamily::DoubleWellNLS,
     "psi = +/- a exp(i (m_s^2 - a^2 lambda) t / omega)", "a, m_s, lambda, omega",
     "omega > 0", "all real x"},
    {SolutionId::CqKgSn, ModelFamily::CubicQuinticKG,
     "phi = sqrt(3 sigma/(8 lambda) + sqrt(3/(20 lambda)) sn(x | 1/5))",
     "sigma, lambda", "15 sigma^2 = 16 lambda",
     "radicand >= 0 (principal complex root otherwise)"},
    {SolutionId::CqNlsSn, ModelFamily::CubicQuinticNLS,
     "psi = sqrt(3 sigma/(8 lambda) + sqrt(3m/(4 lambda)) sn(x | m)) "
     "exp(-i ((1 + m - 9 sigma^2/(8 lambda))/4) t)",
     "sigma, lambda, m", "16 m lambda = 3 sigma^2",
     "radicand >= 0 (principal complex root otherwise)"},
    {SolutionId::SgKink, ModelFamily::SineGordonKG,
     "phi = 4 arctan(exp(lambda gamma (x - nu t) + delta)), gamma = 1/sqrt(1 - nu^2)",
     "lambda, nu, delta", "|nu| < 1", "all real x, t"},
    {SolutionId::SgImag, ModelFamily::SineGordonKG,
     "phi = +/- 2 arctan(+/- i sn(+/- x/sqrt(2) | -1)), lambda = 1", "lambda",
     "lambda = 1", "x away from |sn| = 1 (principal arctan branch)"},
    {SolutionId::BesselUniform, ModelFamily::BesselNLS,
     "psi = psi0 exp(-i lambda^2 J1(psi0) t / (omega psi0))", "psi0, lambda, omega",
     "omega > 0", "all real x"},
}};

template <typename... Ts>
[[noreturn]] void constraint_failure(SolutionId id, Ts&&... parts) {
  std::ostringstream os;
  os << to_string(id) << ": constraint violated: ";
  (os << ... << parts);
  throw ConstraintError(os.str());
}

double dc_or_pole(SolutionId id, double u, double m, double threshold) {
  try {
    return specfn::jacobi_dc(u, m, threshold);
  } catch (const PoleError& e) {
    std::ostringstream os;
    os << to_string(id) << ": " << e.what();
    throw PoleError(os.str(), e.location(), e.distance());
  }
}

Evaluation cq_profile(double alpha, double beta, double sn) {
  const double radicand = alpha + beta * sn;
  return {csqrt(radicand), radicand < 0.0};
}

}  // namespace

double SolutionParams::gamma() const { return 1.0 / std::sqrt(1.0 - nu * nu); }

std::span<const SolutionId> all_solution_ids() noexcept { return kIds; }

std::string_view to_string(SolutionId id) noexcept {
  return kIdNames[static_cast<std::size_t>(id)];
}

std::optional<SolutionId> solution_id_from_string(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kIdNames.size(); ++i) {
    if (kIdNames[i] == name) return kIds[i];
  }
  return std::nullopt;
}

const CatalogEntry& catalog_entry(SolutionId id) {
  return kCatalog[static_cast<std::size_t>(id)];
}

bool is_kg_solution(SolutionId id) noexcept { return is_kg(catalog_entry(id).family); }
bool is_nls_solution(SolutionId id) noexcept { return is_nls(catalog_entry(id).family); }

ModelSpec model_for(const AnalyticSolution& sol) {
  const SolutionParams& p = sol.params;
  switch (catalog_entry(sol.id).family) {
    case ModelFamily::CubicKG:
      return make_cubic_kg(p.lambda);
    case ModelFamily::DoubleWellKG:
      return make_double_well_kg(p.mass, p.lambda);
    case ModelFamily::CubicQuinticKG:
      return make_cubic_quintic_kg(p.sigma, p.lambda);
    case ModelFamily::SineGordonKG:
      return make_sine_gordon_kg(p.lambda);
    case ModelFamily::CubicNLS:
      return make_cubic_nls(p.lambda, p.omega);
    case ModelFamily::DoubleWellNLS:
      return make_double_well_nls(p.mass, p.lambda, p.omega);
    case ModelFamily::CubicQuinticNLS:
      return make_cubic_quintic_nls(p.sigma, p.lambda);
    case ModelFamily::BesselNLS:
      return make_bessel_nls(p.lambda, p.omega);
  }
  return {};
}

bool in_validity_domain(const AnalyticSolution& sol) {
  switch (sol.id) {
    case SolutionId::CubicNlsSn:
    case SolutionId::DwNlsSn:
      return sol.params.m > 0.0;
    case SolutionId::CubicNlsCn:
    case SolutionId::DwNlsCn:
      return sol.params.m < 0.0;
    default:
      return true;
  }
}

void check_constraints(const AnalyticSolution& sol) {
  const SolutionParams& p = sol.params;
  const SolutionId id = sol.id;
  const ModelFamily family = catalog_entry(id).family;
  if (is_nls(family) && family != ModelFamily::CubicQuinticNLS && !(p.omega > 0.0)) {
    constraint_failure(id, "omega > 0 (omega = ", p.omega, ")");
  }
  switch (id) {
    case SolutionId::CqKgSn:
      if (!cubic_quintic_kg_constraint_holds(p.sigma, p.lambda)) {
        constraint_failure(id, "15 sigma^2 = 16 lambda (sigma = ", p.sigma,
                           ", lambda = ", p.lambda, ")");
      }
      return;
    case SolutionId::CqNlsSn:
      if (!cubic_quintic_nls_constraint_holds(p.m, p.sigma, p.lambda)) {
        constraint_failure(id, "16 m lambda = 3 sigma^2 (m = ", p.m, ", sigma = ", p.sigma,
                           ", lambda = ", p.lambda, ")");
      }
      return;
    case SolutionId::SgKink:
      if (!(std::abs(p.nu) < 1.0)) constraint_failure(id, "|nu| < 1 (nu = ", p.nu, ")");
      return;
    case SolutionId::SgImag:
      if (p.lambda != 1.0) constraint_failure(id, "lambda = 1 (lambda = ", p.lambda, ")");
      return;
    case SolutionId::DwKgSn:
    case SolutionId::DwKgCn:
    case SolutionId::DwKgDc:
      if (p.c == 0.0) constraint_failure(id, "c != 0");
      break;
    case SolutionId::BesselUniform:
    case SolutionId::DwNlsConst:
      return;
    default:
      break;
  }
  if (p.lambda == 0.0) constraint_failure(id, "lambda != 0");
}

Evaluation evaluate(const AnalyticSolution& sol, double x, double t,
                    double pole_threshold) {
  check_constraints(sol);
  const SolutionParams& p = sol.params;
  const double s = sol.signs.outer < 0 ? -1.0 : 1.0;
  const double s_in = sol.signs.inner < 0 ? -1.0 : 1.0;
  const double cx = p.c * x;
  const double ms2 = p.mass * p.mass;
  const double c2 = p.c * p.c;

  Evaluation e{};
  switch (sol.id) {
    case SolutionId::CubicKgSn:
      e.value = kI * p.c * csqrt(2.0 / p.lambda) * specfn::jacobi_elliptic(cx, -1.0).sn;
      break;
    case SolutionId::CubicKgCn:
      e.value = kI * p.c / csqrt(p.lambda) * specfn::jacobi_elliptic(cx, 0.5).cn;
      break;
    case SolutionId::CubicKgDc:
      e.value = p.c * csqrt(2.0 / p.lambda) * dc_or_pole(sol.id, cx, -1.0, pole_threshold);
      break;
    case SolutionId::CubicNlsSn:
    case SolutionId::CubicNlsCn:
    case SolutionId::CubicNlsDc:
    case SolutionId::DwNlsSn:
    case SolutionId::DwNlsCn:
    case SolutionId::DwNlsDc: {
      cd profile;
      if (sol.id == SolutionId::CubicNlsSn || sol.id == SolutionId::DwNlsSn) {
        profile = p.c * csqrt(2.0 * p.m / p.lambda) * specfn::jacobi_elliptic(cx, p.m).sn;
      } else if (sol.id == SolutionId::CubicNlsCn || sol.id == SolutionId::DwNlsCn) {
        profile =
            kI * p.c * csqrt(2.0 * p.m / p.lambda) * specfn::jacobi_elliptic(cx, p.m).cn;
      } else {
        profile = p.c * csqrt(2.0 / p.lambda) * dc_or_pole(sol.id, cx, p.m, pole_threshold);
      }
      e.value = profile * phase(phase_rate(sol), t);
      break;
    }
    case SolutionId::DwKgKink:
      e.value = p.mass / csqrt(p.lambda) *
                std::tanh(s_in * p.mass / std::numbers::sqrt2 * (x - p.x0));
      break;
    case SolutionId::DwKgSn:
      e.value = csqrt(2.0 / p.lambda) * csqrt(ms2 - c2) *
                specfn::jacobi_elliptic(cx, (ms2 - c2) / c2).sn;
      break;
    case SolutionId::DwKgCn:
      e.value = kI * csqrt((c2 - ms2) / p.lambda) *
                specfn::jacobi_elliptic(cx, (c2 - ms2) / (2.0 * c2)).cn;
      break;
    case SolutionId::DwKgDc:
      e.value = p.c * csqrt(2.0 / p.lambda) *
                dc_or_pole(sol.id, cx, (ms2 - c2) / c2, pole_threshold);
      break;
    case SolutionId::DwKgConst:
      e.value = p.mass / csqrt(p.lambda);
      break;
    case SolutionId::DwNlsTanh:
      e.value = p.c * csqrt(2.0 / p.lambda) * std::tanh(s_in * p.c * (x - p.x0)) *
                phase(phase_rate(sol), t);
      break;
    case SolutionId::DwNlsConst:
      e.value = p.a * phase(phase_rate(sol), t);
      break;
    case SolutionId::CqKgSn: {
      const double alpha = 3.0 * p.sigma / (8.0 * p.lambda);
      const double beta = std::sqrt(3.0 / (20.0 * p.lambda));
      e = cq_profile(alpha, beta, specfn::jacobi_elliptic(x, 0.2).sn);
      break;
    }
    case SolutionId::CqNlsSn: {
      const double alpha = 3.0 * p.sigma / (8.0 * p.lambda);
      const double beta = std::sqrt(3.0 * p.m / (4.0 * p.lambda));
      e = cq_profile(alpha, beta, specfn::jacobi_elliptic(x, p.m).sn);
      e.value *= phase(phase_rate(sol), t);
      break;
    }
    case SolutionId::SgKink: {
      const double arg = p.lambda * p.gamma() * (x - p.nu * t) + p.delta;
      e.value = 4.0 * std::atan(std::exp(arg));
      break;
    }
    case SolutionId::SgImag: {
      const double sn = specfn::jacobi_elliptic(x / std::numbers::sqrt2, -1.0).sn;
      const double gap = 1.0 - std::abs(sn);
      if (gap < pole_threshold) {
        std::ostringstream os;
        os << "SG_IMAG: |sn(x/sqrt2 | -1)| = 1 at x = " << x
           << " (arctan(+/- i) is singular)";
        // |sn| ~ 1 - (u - K)^2 (1 - m)/2 near its maximum, m = -1.
        throw PoleError(os.str(), x, std::numbers::sqrt2 * std::sqrt(std::max(gap, 0.0)));
      }
      e.value = 2.0 * std::atan(s_in * kI * sn);
      break;
    }
    case SolutionId::BesselUniform:
      e.value = p.psi0 * phase(phase_rate(sol), t);
      break;
  }
  e.value *= s;
  return e;
}

std::complex<double> eval_solution(const AnalyticSolution& sol, double x, double t) {
  return evaluate(sol, x, t).value;
}

double phase_rate(const AnalyticSolution& sol) {
  const SolutionParams& p = sol.params;
  const double c2 = p.c * p.c;
  const double ms2 = p.mass * p.mass;
  switch (sol.id) {
    case SolutionId::CubicNlsSn:
    case SolutionId::CubicNlsDc:
      return -(1.0 + p.m) * c2 / p.omega;
    case SolutionId::CubicNlsCn:
      return -(1.0 - 2.0 * p.m) * c2 / p.omega;
    case SolutionId::DwNlsTanh:
      return (ms2 - 2.0 * c2) / p.omega;
    case SolutionId::DwNlsSn:
    case SolutionId::DwNlsDc:
      return (ms2 - (1.0 + p.m) * c2) / p.omega;
    case SolutionId::DwNlsCn:
      return (ms2 - (1.0 - 2.0 * p.m) * c2) / p.omega;
    case SolutionId::DwNlsConst:
      return (ms2 - p.a * p.a * p.lambda) / p.omega;
    case SolutionId::CqNlsSn:
      return -(1.0 + p.m - 9.0 * p.sigma * p.sigma / (8.0 * p.lambda)) / 4.0;
    case SolutionId::BesselUniform:
      return -p.lambda * p.lambda / p.omega * specfn::bessel_j1_over_x(p.psi0);
    default:
      throw FamilyMismatchError("phase_rate: " + std::string(to_string(sol.id)) +
                                " is a Klein-Gordon solution");
  }
}

double MappingPair::quench_value(const SolutionParams& base) const {
  if (m_star) return *m_star;
  const double c2 = base.c * base.c;
  const double ms2 = base.mass * base.mass;
  switch (nls_id) {
    case SolutionId::DwNlsSn:
    case SolutionId::DwNlsDc:
      return (ms2 - c2) / c2;
    case SolutionId::DwNlsCn:
      return (c2 - ms2) / (2.0 * c2);
    default:
      return std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<MappingPair> mapping_table() {
  using K = MappingKind;
  return {
      {SolutionId::CubicKgSn, SolutionId::CubicNlsSn, K::QuenchedParameter, -1.0, "m = -1"},
      {SolutionId::CubicKgCn, SolutionId::CubicNlsCn, K::QuenchedParameter, 0.5, "m = 1/2"},
      {SolutionId::CubicKgDc, SolutionId::CubicNlsDc, K::QuenchedParameter, -1.0, "m = -1"},
      {SolutionId::DwKgKink, SolutionId::DwNlsTanh, K::AmplitudeConstraint, std::nullopt,
       "m_s^2 = 2 c^2"},
      {SolutionId::DwKgSn, SolutionId::DwNlsSn, K::QuenchedParameter, std::nullopt,
       "m = (m_s^2 - c^2)/c^2"},
      {SolutionId::DwKgCn, SolutionId::DwNlsCn, K::QuenchedParameter, std::nullopt,
       "m = (c^2 - m_s^2)/(2 c^2)"},
      {SolutionId::DwKgDc, SolutionId::DwNlsDc, K::QuenchedParameter, std::nullopt,
       "m = (m_s^2 - c^2)/c^2"},
      {SolutionId::DwKgConst, SolutionId::DwNlsConst, K::AmplitudeConstraint, std::nullopt,
       "a = m_s / sqrt(lambda)"},
      {SolutionId::CqKgSn, SolutionId::CqNlsSn, K::QuenchedParameter, 0.2,
       "m = 1/5 with 15 sigma^2 = 16 lambda and 16 m lambda = 3 sigma^2"},
  };
}

std::optional<MappingPair> find_mapping(SolutionId nls_id) {
  for (MappingPair& p : mapping_table()) {
    if (p.nls_id == nls_id) return std::move(p);
  }
  return std::nullopt;
}

std::pair<AnalyticSolution, AnalyticSolution> instantiate_mapping(
    const MappingPair& pair, const SolutionParams& base, double detune) {
  AnalyticSolution kg{pair.kg_id, base, {}};
  AnalyticSolution nls{pair.nls_id, base, {}};
  auto fail = [&](const std::string& why) {
    throw ConstraintError(std::string(to_string(pair.nls_id)) + " -> " +
                          std::string(to_string(pair.kg_id)) + ": " + why);
  };
  switch (pair.nls_id) {
    case SolutionId::DwNlsTanh:
      if (!(base.mass > 0.0)) fail("m_s^2 = 2 c^2 needs m_s > 0");
      nls.params.c = base.mass / std::numbers::sqrt2 + detune;
      break;
    case SolutionId::DwNlsConst:
      if (!(base.lambda > 0.0)) fail("a = m_s / sqrt(lambda) needs lambda > 0");
      nls.params.a = base.mass / std::sqrt(base.lambda) + detune;
      break;
    case SolutionId::DwNlsSn:
    case SolutionId::DwNlsCn:
    case SolutionId::DwNlsDc:
      if (base.c == 0.0) fail("quenched parameter needs c != 0");
      nls.params.m = pair.quench_value(base) + detune;
      break;
    case SolutionId::CqNlsSn: {
      if (base.sigma == 0.0) fail("15 sigma^2 = 16 lambda needs sigma != 0");
      kg.params.lambda = 15.0 * base.sigma * base.sigma / 16.0;
      const double m = pair.quench_value(base) + detune;
      if (m == 0.0) fail("16 m lambda = 3 sigma^2 needs m != 0");
      nls.params.m = m;
      nls.params.lambda = 3.0 * base.sigma * base.sigma / (16.0 * m);
      break;
    }
    default:
      nls.params.m = pair.quench_value(base) + detune;
      break;
  }
  return {kg, nls};
}

std::string catalog_dump() {
  std::ostringstream os;
  for (const CatalogEntry& e : kCatalog) {
    os << "[" << to_string(e.id) << "]\n"
       << "family = " << to_string(e.family) << "\n"
       << "formula = " << e.formula << "\n"
       << "parameters = " << e.parameters << "\n"
       << "constraints = " << e.constraints << "\n"
       << "validity = " << e.validity << "\n";
    if (auto pair = find_mapping(e.id)) {
      os << "maps_to = " << to_string(pair->kg_id) << " at " << pair->constraint_note << "\n";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace svea
