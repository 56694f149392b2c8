#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace svea {

enum class ModelFamily {
  CubicKG,
  DoubleWellKG,
  CubicQuinticKG,
  SineGordonKG,
  CubicNLS,
  DoubleWellNLS,
  CubicQuinticNLS,
  BesselNLS,
};

bool is_kg(ModelFamily f) noexcept;
bool is_nls(ModelFamily f) noexcept;
std::string_view to_string(ModelFamily f) noexcept;
// Throws ConfigError for unknown names.
ModelFamily model_family_from_string(std::string_view name);

// One PDE of the catalog. KG families read  box(phi) + N(phi) = 0  with
// box = d_tt - d_xx; NLS families read  i psi_t + D psi'' - V(|psi|) psi = 0.
struct ModelSpec {
  ModelFamily family = ModelFamily::BesselNLS;
  double lambda = 1.0;      // coupling; enters as lambda^2 for sine-Gordon/Bessel
  double mass = 1.0;        // m_s, double-well only
  double sigma = 1.0;       // cubic-quintic only
  double omega = 1.0;       // carrier frequency, NLS only
  double dispersion = 0.5;  // D

  // Canonical dispersion for the family: 1/omega (cubic, double-well),
  // 1/(2 omega) (Bessel), 1 (cubic-quintic), 0 for KG families.
  static double canonical_dispersion(ModelFamily family, double omega) noexcept;

  // Throws ConfigError when an invariant (omega > 0 for NLS, finite values)
  // does not hold.
  void validate() const;
};

ModelSpec make_cubic_kg(double lambda);
ModelSpec make_double_well_kg(double mass, double lambda);
ModelSpec make_cubic_quintic_kg(double sigma, double lambda);
ModelSpec make_sine_gordon_kg(double lambda);
ModelSpec make_cubic_nls(double lambda, double omega);
ModelSpec make_double_well_nls(double mass, double lambda, double omega);
ModelSpec make_cubic_quintic_nls(double sigma, double lambda);
ModelSpec make_bessel_nls(double lambda = 1.0, double omega = 1.0);

// Published parameter relations used in mapping mode.
bool cubic_quintic_kg_constraint_holds(double sigma, double lambda, double tol = 1e-12);
bool cubic_quintic_nls_constraint_holds(double m, double sigma, double lambda,
                                        double tol = 1e-12);

/// N(phi) for a KG family; throws FamilyMismatchError for NLS families.
std::complex<double> kg_force(const ModelSpec& model, std::complex<double> phi);

/// V(|psi|) such that the nonlinear sub-step is psi -> psi exp(-i V dt).
/// Real for every family, so that sub-step preserves |psi| pointwise.
/// Throws FamilyMismatchError for KG families, DomainError for amplitude < 0.
double nls_nonlinear_phase_rate(const ModelSpec& model, double amplitude);

struct KappaSample {
  double amplitude = 0.0;
  double kappa = 0.0;  // J1(amplitude); the |psi|^-3 factor is dropped
};

std::vector<KappaSample> kappa_curve(std::span<const double> amplitudes);

// Number of maximal intervals of constant sign of kappa over (0, max_amplitude].
int kappa_sign_regimes(double max_amplitude, int samples = 20000);

}  // namespace svea
