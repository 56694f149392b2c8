#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svealab/models.hpp"
#include "svealab/specfn.hpp"

namespace svea {

// Closed-form solutions of the KG equations and their envelope (NLS)
// reductions. Names follow the family/profile pattern of the catalog dump.
enum class SolutionId {
  CubicKgSn,
  CubicKgCn,
  CubicKgDc,
  CubicNlsSn,
  CubicNlsCn,
  CubicNlsDc,
  DwKgKink,
  DwKgSn,
  DwKgCn,
  DwKgDc,
  DwKgConst,
  DwNlsTanh,
  DwNlsSn,
  DwNlsCn,
  DwNlsDc,
  DwNlsConst,
  CqKgSn,
  CqNlsSn,
  SgKink,
  SgImag,
  BesselUniform,
};

inline constexpr std::size_t kCatalogSize = 21;

std::span<const SolutionId> all_solution_ids() noexcept;
std::string_view to_string(SolutionId id) noexcept;  // e.g. "CUBIC_KG_SN"
std::optional<SolutionId> solution_id_from_string(std::string_view name) noexcept;

// Union of every parameter a catalog entry may read. Entries ignore the
// fields they do not use.
struct SolutionParams {
  double c = 1.0;
  double lambda = 1.0;
  double mass = 1.0;  // m_s
  double sigma = 1.0;
  double m = 0.5;  // elliptic parameter of the NLS entries
  double omega = 1.0;
  double a = 1.0;  // constant-amplitude double-well envelope
  double x0 = 0.0;
  double nu = 0.0;  // sine-Gordon kink velocity, |nu| < 1
  double delta = 0.0;
  double psi0 = 1.0;  // uniform Bessel amplitude

  double gamma() const;  // Lorentz factor 1/sqrt(1 - nu^2)
};

// Every printed +/- becomes an explicit choice; +1 everywhere by default.
// outer multiplies the whole solution; inner is the sign inside tanh for the
// kinks and in front of i sn(...) for SG_IMAG.
struct SignChoice {
  int outer = +1;
  int inner = +1;
};

struct AnalyticSolution {
  SolutionId id = SolutionId::CubicKgSn;
  SolutionParams params{};
  SignChoice signs{};
};

struct CatalogEntry {
  SolutionId id;
  ModelFamily family;
  std::string_view formula;
  std::string_view parameters;
  std::string_view constraints;
  std::string_view validity;
};

const CatalogEntry& catalog_entry(SolutionId id);

bool is_kg_solution(SolutionId id) noexcept;
bool is_nls_solution(SolutionId id) noexcept;

// The PDE (with parameters taken from the solution) that the entry solves.
ModelSpec model_for(const AnalyticSolution& sol);

// Whether the NLS entry's printed parameter restriction (m > 0 / m < 0) holds.
bool in_validity_domain(const AnalyticSolution& sol);

// Throws ConstraintError naming the first violated relation.
void check_constraints(const AnalyticSolution& sol);

struct Evaluation {
  std::complex<double> value;
  // The cubic-quintic radicand went negative and the principal complex root
  // was taken.
  bool negative_radicand = false;
};

Evaluation evaluate(const AnalyticSolution& sol, double x, double t,
                    double pole_threshold = specfn::kDefaultPoleThreshold);

/// Closed form at (x, t). Throws PoleError near dc / SG_IMAG singularities and
/// ConstraintError when check_constraints fails.
std::complex<double> eval_solution(const AnalyticSolution& sol, double x, double t);

/// Coefficient of t in the envelope's phase, psi = A(x) exp(i * rate * t).
/// Throws FamilyMismatchError for KG entries.
double phase_rate(const AnalyticSolution& sol);

enum class MappingKind {
  QuenchedParameter,    // elliptic parameter fixed to m*
  AmplitudeConstraint,  // m_s^2 = 2 c^2 or a = m_s / sqrt(lambda)
};

struct MappingPair {
  SolutionId kg_id;
  SolutionId nls_id;
  MappingKind kind;
  // m* where it is a pure number (cubic rows, cubic-quintic); empty when it
  // depends on m_s and c or the pair is fixed by an amplitude constraint.
  std::optional<double> m_star;
  std::string constraint_note;

  // m* evaluated for the given base parameters (QuenchedParameter only).
  double quench_value(const SolutionParams& base) const;
};

/// The nine rows of the cubic and double-well mapping tables plus the
/// cubic-quintic pair.
std::vector<MappingPair> mapping_table();

std::optional<MappingPair> find_mapping(SolutionId nls_id);

/// Builds (KG solution, NLS solution) with the NLS parameters fixed so the
/// phase is quenched. detune shifts the quenched value (diagnostic mode).
/// Throws ConstraintError when base cannot satisfy the pair's constraint.
std::pair<AnalyticSolution, AnalyticSolution> instantiate_mapping(
    const MappingPair& pair, const SolutionParams& base, double detune = 0.0);

// One record per entry: id, family, formula, parameters, constraints, validity.
std::string catalog_dump();

}  // namespace svea
