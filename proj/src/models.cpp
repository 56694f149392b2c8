#include "svealab/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "svealab/errors.hpp"
#include "svealab/specfn.hpp"

namespace svea {
namespace {

constexpr std::array<std::pair<ModelFamily, std::string_view>, 8> kNames{{
    {ModelFamily::CubicKG, "CubicKG"},
    {ModelFamily::DoubleWellKG, "DoubleWellKG"},
    {ModelFamily::CubicQuinticKG, "CubicQuinticKG"},
    {ModelFamily::SineGordonKG, "SineGordonKG"},
    {ModelFamily::CubicNLS, "CubicNLS"},
    {ModelFamily::DoubleWellNLS, "DoubleWellNLS"},
    {ModelFamily::CubicQuinticNLS, "CubicQuinticNLS"},
    {ModelFamily::BesselNLS, "BesselNLS"},
}};

ModelSpec make(ModelFamily family) {
  ModelSpec m;
  m.family = family;
  return m;
}

bool relation_holds(double lhs, double rhs, double tol) {
  return std::abs(lhs - rhs) <= tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

}  // namespace

bool is_kg(ModelFamily f) noexcept {
  switch (f) {
    case ModelFamily::CubicKG:
    case ModelFamily::DoubleWellKG:
    case ModelFamily::CubicQuinticKG:
    case ModelFamily::SineGordonKG:
      return true;
    default:
      return false;
  }
}

bool is_nls(ModelFamily f) noexcept { return !is_kg(f); }

std::string_view to_string(ModelFamily f) noexcept {
  for (const auto& [family, name] : kNames) {
    if (family == f) return name;
  }
  return "?";
}

ModelFamily model_family_from_string(std::string_view name) {
  for (const auto& [family, n] : kNames) {
    if (n == name) return family;
  }
  throw ConfigError("unknown model family '" + std::string(name) + "'");
}

double ModelSpec::canonical_dispersion(ModelFamily family, double omega) noexcept {
  switch (family) {
    case ModelFamily::CubicNLS:
    case ModelFamily::DoubleWellNLS:
      return 1.0 / omega;
    case ModelFamily::BesselNLS:
      return 1.0 / (2.0 * omega);
    case ModelFamily::CubicQuinticNLS:
      return 1.0;
    default:
      return 0.0;
  }
}

void ModelSpec::validate() const {
  for (double v : {lambda, mass, sigma, omega, dispersion}) {
    if (!std::isfinite(v)) throw ConfigError("model parameters must be finite");
  }
  if (is_nls(family) && !(omega > 0.0)) {
    std::ostringstream os;
    os << to_string(family) << ": omega must be > 0 (got " << omega << ")";
    throw ConfigError(os.str());
  }
}

ModelSpec make_cubic_kg(double lambda) {
  ModelSpec m = make(ModelFamily::CubicKG);
  m.lambda = lambda;
  m.dispersion = 0.0;
  return m;
}

ModelSpec make_double_well_kg(double mass, double lambda) {
  ModelSpec m = make(ModelFamily::DoubleWellKG);
  m.mass = mass;
  m.lambda = lambda;
  m.dispersion = 0.0;
  return m;
}

ModelSpec make_cubic_quintic_kg(double sigma, double lambda) {
  ModelSpec m = make(ModelFamily::CubicQuinticKG);
  m.sigma = sigma;
  m.lambda = lambda;
  m.dispersion = 0.0;
  return m;
}

ModelSpec make_sine_gordon_kg(double lambda) {
  ModelSpec m = make(ModelFamily::SineGordonKG);
  m.lambda = lambda;
  m.dispersion = 0.0;
  return m;
}

ModelSpec make_cubic_nls(double lambda, double omega) {
  ModelSpec m = make(ModelFamily::CubicNLS);
  m.lambda = lambda;
  m.omega = omega;
  m.dispersion = ModelSpec::canonical_dispersion(m.family, omega);
  return m;
}

ModelSpec make_double_well_nls(double mass, double lambda, double omega) {
  ModelSpec m = make(ModelFamily::DoubleWellNLS);
  m.mass = mass;
  m.lambda = lambda;
  m.omega = omega;
  m.dispersion = ModelSpec::canonical_dispersion(m.family, omega);
  return m;
}

ModelSpec make_cubic_quintic_nls(double sigma, double lambda) {
  ModelSpec m = make(ModelFamily::CubicQuinticNLS);
  m.sigma = sigma;
  m.lambda = lambda;
  m.dispersion = 1.0;
  return m;
}

ModelSpec make_bessel_nls(double lambda, double omega) {
  ModelSpec m = make(ModelFamily::BesselNLS);
  m.lambda = lambda;
  m.omega = omega;
  m.dispersion = ModelSpec::canonical_dispersion(m.family, omega);
  return m;
}

bool cubic_quintic_kg_constraint_holds(double sigma, double lambda, double tol) {
  return relation_holds(15.0 * sigma * sigma, 16.0 * lambda, tol);
}

bool cubic_quintic_nls_constraint_holds(double m, double sigma, double lambda,
                                        double tol) {
  return relation_holds(16.0 * m * lambda, 3.0 * sigma * sigma, tol);
}

std::complex<double> kg_force(const ModelSpec& model, std::complex<double> phi) {
  const double lambda = model.lambda;
  switch (model.family) {
    case ModelFamily::CubicKG:
      return lambda * phi * phi * phi;
    case ModelFamily::DoubleWellKG:
      return -model.mass * model.mass * phi + lambda * phi * phi * phi;
    case ModelFamily::CubicQuinticKG: {
      const std::complex<double> phi3 = phi * phi * phi;
      return -model.sigma * phi3 + lambda * phi3 * phi * phi;
    }
    case ModelFamily::SineGordonKG:
      return lambda * lambda * std::sin(phi);
    default:
      throw FamilyMismatchError("kg_force: " + std::string(to_string(model.family)) +
                                " is not a Klein-Gordon family");
  }
}

double nls_nonlinear_phase_rate(const ModelSpec& model, double amplitude) {
  if (!is_nls(model.family)) {
    throw FamilyMismatchError("nls_nonlinear_phase_rate: " +
                              std::string(to_string(model.family)) +
                              " is not an NLS family");
  }
  if (!(amplitude >= 0.0)) {
    std::ostringstream os;
    os << "nls_nonlinear_phase_rate: amplitude must be >= 0 (got " << amplitude << ")";
    throw DomainError(os.str());
  }
  const double a2 = amplitude * amplitude;
  switch (model.family) {
    case ModelFamily::CubicNLS:
      return model.lambda / model.omega * a2;
    case ModelFamily::DoubleWellNLS:
      return (model.lambda * a2 - model.mass * model.mass) / model.omega;
    case ModelFamily::CubicQuinticNLS:
      return -model.sigma * a2 + model.lambda * a2 * a2;
    case ModelFamily::BesselNLS:
      return model.lambda * model.lambda / model.omega *
             specfn::bessel_j1_over_x(amplitude);
    default:
      return 0.0;
  }
}

std::vector<KappaSample> kappa_curve(std::span<const double> amplitudes) {
  std::vector<KappaSample> out;
  out.reserve(amplitudes.size());
  for (double a : amplitudes) {
    if (!(a >= 0.0)) throw DomainError("kappa_curve: amplitudes must be >= 0");
    out.push_back({a, specfn::bessel_j1(a)});
  }
  return out;
}

int kappa_sign_regimes(double max_amplitude, int samples) {
  int regimes = 0;
  int last_sign = 0;
  for (int i = 1; i <= samples; ++i) {
    const double a = max_amplitude * i / samples;
    const double k = specfn::bessel_j1(a);
    const int sign = (k > 0.0) - (k < 0.0);
    if (sign != 0 && sign != last_sign) {
      ++regimes;
      last_sign = sign;
    }
  }
  return regimes;
}

}  // namespace svea
